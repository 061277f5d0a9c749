use std::fmt;

/// Default relative tolerance for all pass/fail gates.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Outcome of a numerical check.
///
/// `pass` holds exactly when `margin >= -tol * scale`. For residual checks the
/// margin is the negated relative residual and the scale is one; for PSD checks
/// the margin is the smallest eigenvalue and the scale is the norm of the
/// matrix being tested.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub pass: bool,
    pub margin: f64,
    pub scale: f64,
    pub tol: f64,
    pub residuals: Vec<(String, f64)>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn from_margin(margin: f64, scale: f64, tol: f64) -> Self {
        let pass = margin >= -tol * scale;
        CheckReport {
            pass,
            margin,
            scale,
            tol,
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Residual-style check: passes iff `residual <= tol`.
    pub fn from_residual(name: &str, residual: f64, tol: f64) -> Self {
        let mut report = Self::from_margin(-residual, 1.0, tol);
        // NaN residuals must never pass
        if residual.is_nan() {
            report.pass = false;
        }
        report.with_residual(name, residual)
    }

    pub fn with_residual(mut self, name: &str, value: f64) -> Self {
        self.residuals.push((name.to_string(), value));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    /// True when the verdict sits within `tol * scale` of the decision boundary.
    /// Such results pass but deserve a warning (equality cases live here).
    pub fn on_boundary(&self) -> bool {
        self.margin.abs() <= self.tol * self.scale
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.pass, self.on_boundary()) {
            (true, true) => "pass (boundary)",
            (true, false) => "pass",
            (false, _) => "fail",
        };
        write!(
            f,
            "{verdict}: margin {} (scale {}, tol {})",
            self.margin, self.scale, self.tol
        )?;
        for (name, value) in &self.residuals {
            write!(f, "\n  {name} = {value}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}
