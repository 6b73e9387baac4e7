//! Property specifications: an exact decider plus, per radius, a semilinear
//! description of the member histograms over a pinned type registry.
//!
//! Property files are line based:
//!
//! ```text
//! name disjoint-triangles
//! decider disjoint-triangles
//! profile r=1 lambda=1
//! radius 1
//! semilinear triangles.sl
//! registry triangles.reg
//! ```
//!
//! `semilinear` and `registry` lines attach to the most recent `radius`. The
//! registry line may be omitted when the semilinear file names its registry.
//! Paths are relative to the property file.

use super::LocalityProfile;
use crate::db::{Database, Elem, Schema};
use crate::distances::isomorphic;
use crate::error::{Error, Result};
use crate::generate::grid_edges;
use crate::neighborhoods::{ball, canonical_code, TypeRegistry};
use crate::rational::{self, int};
use crate::semilinear::{load_semilinear, LinearSet, SemilinearSet};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

type CustomDecider = Arc<dyn Fn(&Database) -> bool + Send + Sync>;

/// Exact membership test, used when the whole input is small enough to read.
#[derive(Clone)]
pub enum Decider {
    /// Symmetric graph whose components are all triangles.
    DisjointTriangles,
    /// Symmetric graph of maximum degree one.
    Matchings,
    /// Symmetric graph that is bipartite or has an odd number of vertices.
    BipOrOdd,
    /// Symmetric graph isomorphic to an `a × b` grid.
    Grid,
    Custom(String, CustomDecider),
}

impl fmt::Debug for Decider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Decider {
    pub fn from_name(name: &str) -> Option<Decider> {
        Some(match name {
            "disjoint-triangles" => Decider::DisjointTriangles,
            "matchings" => Decider::Matchings,
            "bip-or-odd" => Decider::BipOrOdd,
            "grid" => Decider::Grid,
            _ => return None,
        })
    }

    pub fn name(&self) -> &str {
        match self {
            Decider::DisjointTriangles => "disjoint-triangles",
            Decider::Matchings => "matchings",
            Decider::BipOrOdd => "bip-or-odd",
            Decider::Grid => "grid",
            Decider::Custom(name, _) => name,
        }
    }

    pub fn decide(&self, db: &Database) -> bool {
        if let Decider::Custom(_, f) = self {
            return f(db);
        }
        if !is_simple_graph(db) {
            return false;
        }
        let g = db.gaifman_graph();
        match self {
            Decider::DisjointTriangles => g
                .components()
                .iter()
                .all(|c| c.len() == 3 && c.iter().all(|&v| g.degree(v) == 2)),
            Decider::Matchings => g.max_degree() <= 1,
            Decider::BipOrOdd => db.domain_size() % 2 == 1 || g.is_bipartite(),
            Decider::Grid => is_grid(db),
            Decider::Custom(..) => unreachable!(),
        }
    }
}

/// Single symmetric binary relation without self-loops.
pub fn is_simple_graph(db: &Database) -> bool {
    **db.schema() == *Schema::graph()
        && db.tuples(0).all(|t| t[0] != t[1] && db.contains_tuple(0, &[t[1], t[0]]))
}

fn is_grid(db: &Database) -> bool {
    let n = db.domain_size();
    if n == 0 {
        return false;
    }
    let edges = db.tuple_count(0) / 2;
    (1..=n)
        .take_while(|a| a * a <= n)
        .filter(|a| n.is_multiple_of(*a))
        .any(|a| {
            let b = n / a;
            let expected = (a * (b - 1) + b * (a - 1)) as usize;
            expected == edges
                && Database::graph(n, 8, &grid_edges(a, b)).is_ok_and(|g| isomorphic(db, &g))
        })
}

/// The semilinear set for one radius together with the registry that fixes
/// what each coordinate means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusHistograms {
    pub set: SemilinearSet,
    pub registry: TypeRegistry,
}

#[derive(Debug, Clone)]
pub struct PropertySpec {
    pub name: String,
    pub decider: Decider,
    pub histograms: BTreeMap<u32, RadiusHistograms>,
    pub profile: LocalityProfile,
}

impl PropertySpec {
    pub fn histograms_at(&self, r: u32) -> Result<&RadiusHistograms> {
        self.histograms.get(&r).ok_or_else(|| {
            Error::Params(format!("property `{}` has no semilinear description at radius {r}", self.name))
        })
    }

    pub fn builtin(name: &str) -> Option<PropertySpec> {
        let spec = match name {
            "disjoint-triangles" => {
                let triangle = graph_code_fn(3, &[(1, 2), (2, 3), (1, 3)], 1);
                let set = SemilinearSet::new(1, vec![LinearSet::new(vec![0], vec![vec![3]]).unwrap()]).unwrap();
                PropertySpec {
                    name: name.into(),
                    decider: Decider::DisjointTriangles,
                    histograms: builtin_radii(|r| RadiusHistograms {
                        set: set.clone(),
                        registry: TypeRegistry::from_codes([triangle(r)]),
                    }),
                    profile: LocalityProfile::constant(1, int(1), "calibrated on disjoint-triangle fixtures"),
                }
            }
            "matchings" => {
                let isolated = graph_code_fn(1, &[], 1);
                let edge_end = graph_code_fn(2, &[(1, 2)], 1);
                let set = SemilinearSet::new(
                    2,
                    vec![LinearSet::new(vec![0, 0], vec![vec![1, 0], vec![0, 2]]).unwrap()],
                )
                .unwrap();
                PropertySpec {
                    name: name.into(),
                    decider: Decider::Matchings,
                    histograms: builtin_radii(|r| RadiusHistograms {
                        set: set.clone(),
                        registry: TypeRegistry::from_codes([isolated(r), edge_end(r)]),
                    }),
                    profile: LocalityProfile::constant(1, int(1), "calibrated on matching fixtures"),
                }
            }
            "bip-or-odd" | "grid" => PropertySpec {
                name: name.into(),
                decider: Decider::from_name(name).unwrap(),
                histograms: BTreeMap::new(),
                profile: LocalityProfile::constant(1, int(1), "placeholder; decider only"),
            },
            _ => return None,
        };
        Some(spec)
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["disjoint-triangles", "matchings", "bip-or-odd", "grid"]
    }

    /// A built-in name, or else a property file path.
    pub fn resolve(name_or_path: &str) -> Result<PropertySpec> {
        match PropertySpec::builtin(name_or_path) {
            Some(p) => Ok(p),
            None => PropertySpec::load(Path::new(name_or_path)),
        }
    }

    pub fn load(path: &Path) -> Result<PropertySpec> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        parse_property(&text, dir, &path.display().to_string())
    }
}

const BUILTIN_MAX_RADIUS: u32 = 4;

/// The built-in properties realise the same types at every radius from 1 on.
fn builtin_radii(f: impl Fn(u32) -> RadiusHistograms) -> BTreeMap<u32, RadiusHistograms> {
    (1..=BUILTIN_MAX_RADIUS).map(|r| (r, f(r))).collect()
}

fn graph_code_fn(n: u32, edges: &[(Elem, Elem)], root: Elem) -> impl Fn(u32) -> crate::neighborhoods::TypeCode {
    let db = Database::graph(n, 4, edges).expect("built-in fixture is a valid graph");
    move |r| canonical_code(&ball(&db, root, r).unwrap()).unwrap()
}

/// Semilinear set (with the registry its file names) and explicit registry
/// seen so far for one radius.
type Pending = (Option<(SemilinearSet, Option<TypeRegistry>)>, Option<TypeRegistry>);

fn parse_property(text: &str, dir: &Path, origin: &str) -> Result<PropertySpec> {
    let mut name = None;
    let mut decider = None;
    let mut profile = None;
    let mut radius: Option<u32> = None;
    let mut sets: BTreeMap<u32, Pending> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let (key, rest) = raw.split_once(char::is_whitespace).unwrap_or((raw, ""));
        let rest = rest.trim();
        let need_radius = || radius.ok_or_else(|| Error::parse(line, 1, format!("`{key}` before any `radius`")));
        match key {
            "name" if !rest.is_empty() => name = Some(rest.to_string()),
            "decider" => {
                decider = Some(
                    Decider::from_name(rest)
                        .ok_or_else(|| Error::parse(line, 9, format!("unknown decider `{rest}`")))?,
                )
            }
            "profile" => profile = Some(parse_profile(rest, origin).map_err(|m| Error::parse(line, 9, m))?),
            "radius" => {
                let r = rest
                    .parse()
                    .map_err(|_| Error::parse(line, 8, format!("expected a radius, found `{rest}`")))?;
                if sets.insert(r, (None, None)).is_some() {
                    return Err(Error::parse(line, 1, format!("radius {r} given twice")));
                }
                radius = Some(r);
            }
            "semilinear" => {
                let r = need_radius()?;
                sets.get_mut(&r).unwrap().0 = Some(load_semilinear(&dir.join(rest))?);
            }
            "registry" => {
                let r = need_radius()?;
                sets.get_mut(&r).unwrap().1 = Some(TypeRegistry::read(&dir.join(rest))?);
            }
            _ => return Err(Error::parse(line, 1, format!("unrecognised line `{raw}`"))),
        }
    }
    let mut histograms = BTreeMap::new();
    for (r, (set, registry)) in sets {
        let (set, own) = set.ok_or_else(|| Error::Property(format!("radius {r} has no semilinear set")))?;
        let registry = registry
            .or(own)
            .ok_or_else(|| Error::Property(format!("radius {r} has no type registry")))?;
        if registry.len() != set.dim() {
            return Err(Error::Dimension {
                expected: set.dim(),
                found: registry.len(),
            });
        }
        histograms.insert(r, RadiusHistograms { set, registry });
    }
    Ok(PropertySpec {
        name: name.ok_or_else(|| Error::Property("missing `name`".into()))?,
        decider: decider.ok_or_else(|| Error::Property("missing `decider`".into()))?,
        histograms,
        profile: profile.ok_or_else(|| Error::Property("missing `profile`".into()))?,
    })
}

fn parse_profile(text: &str, origin: &str) -> std::result::Result<LocalityProfile, String> {
    let mut r = None;
    let mut lambda = None;
    for field in text.split_whitespace() {
        match field.split_once('=') {
            Some(("r", v)) => r = Some(v.parse::<u32>().map_err(|_| format!("bad radius `{v}`"))?),
            Some(("lambda", v)) => lambda = Some(rational::parse(v).ok_or_else(|| format!("bad lambda `{v}`"))?),
            _ => return Err(format!("expected `r=<int> lambda=<rational>`, found `{field}`")),
        }
    }
    match (r, lambda) {
        (Some(r), Some(l)) => Ok(LocalityProfile::constant(r, l, &format!("property file {origin}"))),
        _ => Err("profile needs both `r=` and `lambda=`".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neighborhoods::histogram;
    use crate::semilinear::contains;

    fn g(n: u32, edges: &[(u32, u32)]) -> Database {
        Database::graph(n, 8, edges).unwrap()
    }

    #[test]
    fn deciders() {
        let tri2 = g(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        let c6 = g(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        assert!(Decider::DisjointTriangles.decide(&tri2));
        assert!(!Decider::DisjointTriangles.decide(&c6));
        assert!(Decider::BipOrOdd.decide(&c6));
        assert!(!Decider::BipOrOdd.decide(&tri2));
        assert!(Decider::Matchings.decide(&g(5, &[(1, 2), (4, 5)])));
        assert!(!Decider::Matchings.decide(&c6));
        assert!(Decider::Grid.decide(&g(6, &grid_edges(2, 3))));
        assert!(Decider::Grid.decide(&g(9, &grid_edges(3, 3))));
        assert!(!Decider::Grid.decide(&c6));
        // C4 is the 2 × 2 grid
        assert!(Decider::Grid.decide(&g(4, &[(1, 2), (2, 3), (3, 4), (4, 1)])));
    }

    #[test]
    fn builtin_histograms_cover_members() {
        let p = PropertySpec::builtin("matchings").unwrap();
        let h = &p.histograms[&1];
        let db = g(7, &[(1, 2), (3, 4)]);
        let mut reg = h.registry.clone();
        let hist = histogram(&db, 1, &mut reg).unwrap();
        assert_eq!(reg.len(), 2);
        assert_eq!(hist.counts, vec![3, 4]);
        assert!(contains(&h.set, &hist.counts).unwrap().is_some());
        assert!(PropertySpec::builtin("nope").is_none());
    }

    #[test]
    fn property_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("bdrd-prop-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let builtin = PropertySpec::builtin("disjoint-triangles").unwrap();
        builtin.histograms[&1].registry.write(&dir.join("t.reg")).unwrap();
        std::fs::write(dir.join("t.sl"), "dim 1\nbase 0\nperiod 3\n").unwrap();
        let text = "name tri\ndecider disjoint-triangles\nprofile r=1 lambda=1/2\nradius 1\nsemilinear t.sl\nregistry t.reg\n";
        std::fs::write(dir.join("t.prop"), text).unwrap();
        let p = PropertySpec::load(&dir.join("t.prop")).unwrap();
        assert_eq!(p.histograms[&1], builtin.histograms[&1]);
        assert_eq!(p.profile.lambda(&int(1)), rational::ratio(1, 2));

        std::fs::write(dir.join("bad.prop"), "name x\nsemilinear t.sl\n").unwrap();
        assert!(matches!(PropertySpec::load(&dir.join("bad.prop")), Err(Error::Parse { line: 2, .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
