//! The Khovanov complex with twisted coefficients.

pub mod complex;
pub mod convention;
pub mod edge;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use complex::{build_complex, build_complex_with, BigradedComplex, BuildOptions, ChainGroup, ComplexDump, Generator};
pub use convention::{Convention, ConventionTable, Position};
pub use edge::{edge_map, edge_map_in, face_compositions, frobenius_edge_map, EdgeMap};

use crate::code::VirtualLinkDiagram;
use crate::error::Result;
use crate::state::{CubeGeometry, State};

/// Parameters of the Frobenius algebra Z[X]/(X² − hX − t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frobenius {
    pub h: i64,
    pub t: i64,
}

impl Frobenius {
    pub const STANDARD: Frobenius = Frobenius { h: 0, t: 0 };

    pub fn is_standard(self) -> bool {
        self == Self::STANDARD
    }
}

/// Coefficients for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
    Z2,
    Gfp(u64),
    Frobenius(Frobenius),
}

impl Ring {
    pub fn frobenius(self) -> Frobenius {
        match self {
            Ring::Frobenius(f) => f,
            _ => Frobenius::STANDARD,
        }
    }

    /// The prime for finite-field rings.
    pub fn characteristic(self) -> Option<u64> {
        match self {
            Ring::Z2 => Some(2),
            Ring::Gfp(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Ring::Q | Ring::Z2 | Ring::Gfp(_))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Z2 => write!(f, "Z2"),
            Ring::Gfp(p) => write!(f, "GF({p})"),
            Ring::Frobenius(Frobenius { h, t }) => write!(f, "Frobenius({h},{t})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FromStr for Ring {
    type Err = String;

    /// `z`, `q`, `z2`, `gfp:<p>` or `frob:<h>,<t>`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "z" => return Ok(Ring::Z),
            "q" => return Ok(Ring::Q),
            "z2" => return Ok(Ring::Z2),
            _ => {}
        }
        if let Some(p) = lower.strip_prefix("gfp:") {
            let p: u64 = p.parse().map_err(|_| format!("bad prime in '{s}'"))?;
            if !is_prime(p) || p > (1 << 31) {
                return Err(format!("{p} is not a prime below 2^31"));
            }
            return Ok(if p == 2 { Ring::Z2 } else { Ring::Gfp(p) });
        }
        if let Some(ht) = lower.strip_prefix("frob:") {
            let (h, t) = ht.split_once(',').ok_or_else(|| format!("expected frob:<h>,<t>, got '{s}'"))?;
            let h = h.trim().parse().map_err(|_| format!("bad h in '{s}'"))?;
            let t = t.trim().parse().map_err(|_| format!("bad t in '{s}'"))?;
            return Ok(Ring::Frobenius(Frobenius { h, t }));
        }
        Err(format!("unknown ring '{s}'"))
    }
}

/// ε of `circle` (in the resolution of `state`) at `crossing`, under the
/// standard convention.
pub fn local_orientation_sign(d: &VirtualLinkDiagram, state: State, crossing: usize, circle: usize) -> Result<i32> {
    let g = CubeGeometry::new(d);
    Convention::default().orientation_sign(&g, &g.resolve(state), crossing, circle)
}

/// (first, second) circles of `state` at `crossing`, under the standard
/// convention. Inapplicable when a single circle passes through both pieces.
pub fn circle_order_at_crossing(d: &VirtualLinkDiagram, state: State, crossing: usize) -> Result<(usize, usize)> {
    let g = CubeGeometry::new(d);
    Convention::default().circle_order(&g, &g.resolve(state), crossing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_parsing() {
        assert_eq!("z".parse::<Ring>().unwrap(), Ring::Z);
        assert_eq!("Q".parse::<Ring>().unwrap(), Ring::Q);
        assert_eq!("gfp:2".parse::<Ring>().unwrap(), Ring::Z2);
        assert_eq!("gfp:7".parse::<Ring>().unwrap(), Ring::Gfp(7));
        assert_eq!("frob:1,0".parse::<Ring>().unwrap(), Ring::Frobenius(Frobenius { h: 1, t: 0 }));
        assert!("gfp:8".parse::<Ring>().is_err());
        assert!("frob:1".parse::<Ring>().is_err());
        assert!("r".parse::<Ring>().is_err());
    }

    #[test]
    fn orientation_sign_flips_with_reference() {
        // the kink's A-state: the circle on the kink arc runs it forward
        let d = VirtualLinkDiagram::parse("O1-U1-").unwrap();
        let eps = local_orientation_sign(&d, State(0), 0, 0).unwrap();
        assert_eq!(eps.abs(), 1);
        // a circle that meets the crossing in two inconsistent pieces
        let v = VirtualLinkDiagram::parse("O1+O2+U1+U2+").unwrap();
        assert!(matches!(local_orientation_sign(&v, State(0), 0, 0), Err(crate::Error::Inapplicable)));
        assert!(matches!(circle_order_at_crossing(&v, State(0), 0), Err(crate::Error::Inapplicable)));
    }
}
