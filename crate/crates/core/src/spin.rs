//! Spin-1/2 eigenstates, eigenprojectors and contexts along the x, y and z axes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::linalg::{ComplexMatrix, C64, ONE, ZERO};
use crate::subspace::{Projector, StateVector, Subspace, DEFAULT_EPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '−',
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Z, Axis::X, Axis::Y];

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown axis {other:?} (expected x, y or z)")),
        }
    }
}

/// Normalized eigenvector of the Pauli matrix for `axis` with eigenvalue `sign`.
pub fn eigenvector(axis: Axis, sign: Sign) -> Vec<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s = sign.value();
    match axis {
        Axis::Z => match sign {
            Sign::Plus => vec![ONE, ZERO],
            Sign::Minus => vec![ZERO, ONE],
        },
        Axis::X => vec![C64::new(h, 0.0), C64::new(s * h, 0.0)],
        Axis::Y => vec![C64::new(h, 0.0), C64::new(0.0, s * h)],
    }
}

pub fn state(axis: Axis, sign: Sign) -> StateVector {
    StateVector::new(eigenvector(axis, sign)).expect("unit vector")
}

pub fn ray(axis: Axis, sign: Sign) -> Subspace {
    Subspace::from_spanning(2, &[eigenvector(axis, sign)], 0.0).expect("qubit vector")
}

pub fn projector(axis: Axis, sign: Sign) -> Projector {
    ray(axis, sign).projector()
}

/// `{P_{a+}, P_{a−}}` labeled `Σ_<prefix><axis>`.
pub fn context(axis: Axis, prefix: &str) -> Context {
    Context::new(
        format!("Σ_{prefix}{axis}"),
        vec![projector(axis, Sign::Plus), projector(axis, Sign::Minus)],
        DEFAULT_EPS,
    )
    .expect("spin eigenprojectors form a context")
}

/// `(eigenvalue, projector)` pairs of the Pauli matrix.
pub fn spectral_decomposition(axis: Axis) -> Vec<(f64, Projector)> {
    [Sign::Plus, Sign::Minus]
        .into_iter()
        .map(|s| (s.value(), projector(axis, s)))
        .collect()
}

pub fn pauli(axis: Axis) -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    let rows = match axis {
        Axis::X => vec![vec![ZERO, ONE], vec![ONE, ZERO]],
        Axis::Y => vec![vec![ZERO, -i], vec![i, ZERO]],
        Axis::Z => vec![vec![ONE, ZERO], vec![ZERO, -ONE]],
    };
    ComplexMatrix::from_rows(&rows).expect("2x2")
}
