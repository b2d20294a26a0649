//! Resource caps shared by the exhaustive routines.

use serde::Serialize;

use crate::error::{Error, Result};

/// Caps on the exhaustive searches. Every search checks its cap up front and
/// fails with [`Error::CapExceeded`] instead of running away.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest group order for subgroup enumeration.
    pub subgroup_order: usize,
    /// Largest base set for the Petridis minimizer (2^n - 1 candidates).
    pub minimizer_base: usize,
    /// Largest `C` for the brute-force certificate search.
    pub certificate_set: usize,
    /// Largest group order for all-subset scans and sweeps.
    pub exhaustive_order: usize,
    /// Widest integer window for integer-mode scans.
    pub integer_width: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subgroup_order: 256,
            minimizer_base: 20,
            certificate_set: 16,
            exhaustive_order: 24,
            integer_width: 16,
        }
    }
}

impl Limits {
    /// Applies one `key=value` setting. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let slot = match key {
            "subgroup_order" => &mut self.subgroup_order,
            "minimizer_base" => &mut self.minimizer_base,
            "certificate_set" => &mut self.certificate_set,
            "exhaustive_order" => &mut self.exhaustive_order,
            "integer_width" => &mut self.integer_width,
            _ => return Err(Error::InvalidParameter(format!("unknown limit {key:?}"))),
        };
        *slot = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{key} expects a non-negative integer, got {value:?}")))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_known_and_unknown() {
        let mut l = Limits::default();
        l.set("minimizer_base", " 12").unwrap();
        assert_eq!(l.minimizer_base, 12);
        assert!(l.set("bogus", "1").is_err());
        assert!(l.set("integer_width", "-3").is_err());
    }
}
