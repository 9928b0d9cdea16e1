use serde::{Deserialize, Serialize};

use super::FuzzyError;

/// Default ramp width of the opinion concepts.
pub const DEFAULT_RAMP: f64 = 0.2;

/// Triangular fuzzy number with support `[a, b]` and core `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tfn {
    pub a: f64,
    pub m: f64,
    pub b: f64,
}

impl Tfn {
    pub fn new(a: f64, m: f64, b: f64) -> Result<Self, FuzzyError> {
        if !(a.is_finite() && m.is_finite() && b.is_finite()) || a > m || m > b {
            return Err(FuzzyError::InvalidTfn { a, m, b });
        }
        Ok(Self { a, m, b })
    }

    pub fn point(m: f64) -> Self {
        Self { a: m, m, b: m }
    }

    /// Symmetric number centred on `m` with half-width `scale * sigma`.
    pub fn symmetric(m: f64, sigma: f64, scale: f64) -> Self {
        debug_assert!(sigma >= 0.0 && scale > 0.0);
        let half = scale * sigma;
        Self {
            a: m - half,
            m,
            b: m + half,
        }
    }

    pub fn is_point(&self) -> bool {
        self.a == self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn membership(&self, x: f64) -> f64 {
        if x < self.a || x > self.b {
            0.0
        } else if x == self.m {
            1.0
        } else if x < self.m {
            (x - self.a) / (self.m - self.a)
        } else {
            (self.b - x) / (self.b - self.m)
        }
    }

    /// Reflection through zero: `(-b, -m, -a)`.
    pub fn mirror(&self) -> Self {
        Self {
            a: -self.b,
            m: -self.m,
            b: -self.a,
        }
    }

    pub fn shifted(&self, delta: f64) -> Self {
        Self {
            a: self.a + delta,
            m: self.m + delta,
            b: self.b + delta,
        }
    }
}

/// Support endpoints `m ∓ s·σ` around the core `m`. Not clamped to [-1, 1].
pub fn build_tfn(m: f64, sigma: f64, s: f64) -> Tfn {
    Tfn::symmetric(m, sigma, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpinionKind {
    Positive,
    Negative,
}

/// Piecewise-linear fuzzy set for positive or negative opinion.
///
/// Positive membership is 0 up to polarity 0, rises linearly to 1 at `ramp`,
/// and stays 1 beyond. Negative opinion is its mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpinionConcept {
    pub kind: OpinionKind,
    pub ramp: f64,
}

impl OpinionConcept {
    pub fn positive(ramp: f64) -> Self {
        debug_assert!(ramp > 0.0);
        Self {
            kind: OpinionKind::Positive,
            ramp,
        }
    }

    pub fn negative(ramp: f64) -> Self {
        debug_assert!(ramp > 0.0);
        Self {
            kind: OpinionKind::Negative,
            ramp,
        }
    }

    pub fn membership(&self, x: f64) -> f64 {
        let x = match self.kind {
            OpinionKind::Positive => x,
            OpinionKind::Negative => -x,
        };
        (x / self.ramp).clamp(0.0, 1.0)
    }
}

/// Possibility `sup_x min(μ_t(x), μ_c(x))`, in closed form.
///
/// Against the positive ramp the supremum is 1 once the core reaches the
/// plateau, 0 when the support lies at or left of zero, and otherwise sits
/// where the right leg of the triangle crosses the ramp:
/// `b / (ramp + b - m)`. The negative concept reuses this on the mirrored
/// number.
pub fn possibility(t: &Tfn, concept: &OpinionConcept) -> f64 {
    let t = match concept.kind {
        OpinionKind::Positive => *t,
        OpinionKind::Negative => t.mirror(),
    };
    let p = concept.ramp;
    if t.is_point() {
        return (t.m / p).clamp(0.0, 1.0);
    }
    if t.m >= p {
        1.0
    } else if t.b <= 0.0 {
        0.0
    } else {
        t.b / (p + t.b - t.m)
    }
}

/// Degrees of conformity with positive and negative opinion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConformityTuple {
    pub positivity: f64,
    pub negativity: f64,
}

impl ConformityTuple {
    pub fn swapped(&self) -> Self {
        Self {
            positivity: self.negativity,
            negativity: self.positivity,
        }
    }
}

pub fn conformity(t: &Tfn, ramp: f64) -> ConformityTuple {
    ConformityTuple {
        positivity: possibility(t, &OpinionConcept::positive(ramp)),
        negativity: possibility(t, &OpinionConcept::negative(ramp)),
    }
}
