use super::TypeCode;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::path::Path;

/// Type codes in first-seen order. Positions index histogram and distribution
/// vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeRegistry {
    codes: Vec<TypeCode>,
    index: HashMap<TypeCode, usize>,
}

impl TypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_codes(codes: impl IntoIterator<Item = TypeCode>) -> Self {
        let mut reg = Self::new();
        for code in codes {
            reg.register(code);
        }
        reg
    }

    /// Position of `code`, appending it if unseen.
    pub fn register(&mut self, code: TypeCode) -> usize {
        if let Some(&i) = self.index.get(&code) {
            return i;
        }
        let i = self.codes.len();
        self.index.insert(code.clone(), i);
        self.codes.push(code);
        i
    }

    pub fn lookup(&self, code: &TypeCode) -> Option<usize> {
        self.index.get(code).copied()
    }

    pub fn codes(&self) -> &[TypeCode] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// One hex code per line.
    pub fn to_text(&self) -> String {
        self.codes.iter().map(|c| format!("{c}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut reg = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let code = TypeCode::from_hex(line)
                .ok_or_else(|| Error::parse(i + 1, 1, "expected a hex type code"))?;
            if reg.lookup(&code).is_some() {
                return Err(Error::parse(i + 1, 1, "duplicate type code"));
            }
            reg.register(code);
        }
        Ok(reg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}
