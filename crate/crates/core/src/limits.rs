use crate::error::{Error, Result};

/// Size caps for the two cost regimes: vertex-space work (operators,
/// decomposition; matrices are 3^d square) and algebra closure (rows of
/// length 9^d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vertex_d: usize,
    pub max_closure_d: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_vertex_d: 8,
            max_closure_d: 4,
        }
    }
}

/// Environment variable overriding the caps: `N` sets the vertex cap,
/// `N,M` sets both the vertex and closure caps.
pub const CAP_ENV: &str = "TWALG_CAP";

impl Limits {
    /// Applies an override string in the `TWALG_CAP` format.
    pub fn with_override(mut self, spec: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("{CAP_ENV}: bad cap {t:?}")))
        };
        let mut parts = spec.split(',');
        if let Some(v) = parts.next() {
            self.max_vertex_d = parse(v)?;
        }
        if let Some(c) = parts.next() {
            self.max_closure_d = parse(c)?;
        }
        if parts.next().is_some() {
            return Err(Error::Parse(format!("{CAP_ENV}: expected `N` or `N,M`, got {spec:?}")));
        }
        Ok(self)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(spec) => Self::default().with_override(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check_vertex_d(&self, d: usize) -> Result<()> {
        if d > self.max_vertex_d {
            return Err(Error::Resource {
                what: format!("d = {d} vertex-space computation"),
                limit: self.max_vertex_d,
                partial: None,
            });
        }
        Ok(())
    }

    pub fn check_closure_d(&self, d: usize) -> Result<()> {
        if d > self.max_closure_d {
            return Err(Error::Resource {
                what: format!("d = {d} algebra closure"),
                limit: self.max_closure_d,
                partial: None,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_formats() {
        let l = Limits::default().with_override("6").unwrap();
        assert_eq!((l.max_vertex_d, l.max_closure_d), (6, 4));
        let l = Limits::default().with_override("7,3").unwrap();
        assert_eq!((l.max_vertex_d, l.max_closure_d), (7, 3));
        assert!(Limits::default().with_override("x").is_err());
        assert!(Limits::default().with_override("1,2,3").is_err());
    }
}
