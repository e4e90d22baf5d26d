//! The shipped example rings, embedded from the `rings/` directory.

use crate::error::Result;
use crate::ring::CoordinateRing;
use crate::ringfile::parse_ring;

pub const EX26: &str = include_str!("../../../rings/ex26.ring");
pub const EX36: &str = include_str!("../../../rings/ex36.ring");
pub const H4G3: &str = include_str!("../../../rings/h4g3.ring");
pub const FQX2: &str = include_str!("../../../rings/fqx2.ring");
pub const FQX3: &str = include_str!("../../../rings/fqx3.ring");
pub const FQX4: &str = include_str!("../../../rings/fqx4.ring");

/// `(file name, contents)` for every shipped ring.
pub const ALL: [(&str, &str); 6] = [
    ("ex26.ring", EX26),
    ("ex36.ring", EX36),
    ("h4g3.ring", H4G3),
    ("fqx2.ring", FQX2),
    ("fqx3.ring", FQX3),
    ("fqx4.ring", FQX4),
];

/// `y^2 + (x^2+x+1)y + (x^2+x+1)(x^5+x^2+1)` over `F_2`.
pub fn ex26() -> CoordinateRing {
    parse_ring(EX26).expect("shipped ring is valid")
}

/// `y^2 = x(x+1)(x+2)(x^2+1)` over `F_3`.
pub fn ex36() -> CoordinateRing {
    parse_ring(EX36).expect("shipped ring is valid")
}

/// The genus-3, class-number-4 curve over `F_2`.
pub fn h4g3() -> CoordinateRing {
    parse_ring(H4G3).expect("shipped ring is valid")
}

/// `F_q[x]` for `q` in {2, 3, 4}.
pub fn fqx(q: u64) -> Result<CoordinateRing> {
    match q {
        2 => parse_ring(FQX2),
        3 => parse_ring(FQX3),
        4 => parse_ring(FQX4),
        _ => {
            let spec =
                crate::field::FieldSpec::extension(smallest_prime_factor(q) as u32, q.ilog(smallest_prime_factor(q)))?;
            if spec.q() != q {
                return Err(crate::error::Error::InvalidField(format!("{q} is not a prime power")));
            }
            CoordinateRing::polynomial_ring(&spec)
        }
    }
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q)
}
