//! Benchmark problems and their reference fronts.

mod front;
mod lsmop;
mod toy;

pub use front::{
    disconnected_front, lattice_divisions, linear_front, simplex_lattice, spherical_front, ReferenceFront,
    DISCONNECTED_SEGMENTS,
};
pub use lsmop::{group_sizes, FrontShape, Landscape, Linkage, Lsmop, DEFAULT_SUBCOMPONENTS};
pub use toy::Toy;

use crate::error::{Error, Result};
use crate::problem::Problem;

/// Default number of reference points used for IGD.
pub const DEFAULT_FRONT_SIZE: usize = 10_000;

const TOY_DEFAULT_DIM: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Lsmop(u8),
    Toy(Toy),
}

fn family(name: &str) -> Result<Family> {
    if let Some(toy) = Toy::parse(name) {
        return Ok(Family::Toy(toy));
    }
    let upper = name.to_ascii_uppercase();
    upper
        .strip_prefix("LSMOP")
        .and_then(|s| s.parse::<u8>().ok())
        .filter(|i| (1..=9).contains(i))
        .map(Family::Lsmop)
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))
}

/// Builds a named problem. Accepts `LSMOP1`..`LSMOP9` (m = 2 or 3) and the
/// toy problems (m = 2).
pub fn make_problem(name: &str, m: usize, d: usize) -> Result<Problem> {
    match family(name)? {
        Family::Lsmop(i) => {
            if !(2..=3).contains(&m) {
                return Err(Error::UnsupportedObjectives { name: format!("LSMOP{i}"), m });
            }
            Ok(Lsmop::new(i, m, d)?.into_problem())
        }
        Family::Toy(t) => {
            if m != 2 {
                return Err(Error::UnsupportedObjectives { name: t.name().into(), m });
            }
            t.problem(d)
        }
    }
}

pub fn make_toy_problem(name: &str) -> Result<Problem> {
    make_toy_problem_with_dim(name, TOY_DEFAULT_DIM)
}

pub fn make_toy_problem_with_dim(name: &str, d: usize) -> Result<Problem> {
    Toy::parse(name).ok_or_else(|| Error::UnknownProblem(name.to_string()))?.problem(d)
}

/// Deterministic sample of the true front with at most `count` points.
///
/// Linear fronts use the simplex lattice with the most divisions that fits,
/// spherical fronts the same lattice normalized to unit length, and the
/// disconnected front a per-segment grid over the position coordinates.
pub fn sample_reference_front(name: &str, m: usize, count: usize) -> Result<ReferenceFront> {
    if count < 100 {
        return Err(Error::InvalidArgument(format!("reference front needs at least 100 points, got {count}")));
    }
    let points = match family(name)? {
        Family::Lsmop(i) => {
            if !(2..=3).contains(&m) {
                return Err(Error::UnsupportedObjectives { name: format!("LSMOP{i}"), m });
            }
            match i {
                1..=4 => linear_front(m, count),
                5..=8 => spherical_front(m, count),
                _ => disconnected_front(m, count),
            }
        }
        Family::Toy(t) => {
            if m != 2 {
                return Err(Error::UnsupportedObjectives { name: t.name().into(), m });
            }
            t.front(count)
        }
    };
    Ok(ReferenceFront::new(points))
}
