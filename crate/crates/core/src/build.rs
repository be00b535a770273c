//! Concrete group constructors and the textual group-spec parser.

use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::group::{FiniteGroup, LieInfo};
use crate::perm::Permutation;

fn check_range(m: usize, lo: usize) -> Result<()> {
    if !(lo..=9).contains(&m) {
        return Err(Error::CapExceeded {
            cap: 9,
            what: format!("degree {m} outside {lo}..=9"),
        });
    }
    Ok(())
}

/// Symmetric group on `m` points, `2 ≤ m ≤ 9`.
pub fn build_symmetric(m: usize, cap: usize) -> Result<FiniteGroup> {
    check_range(m, 2)?;
    let transposition = Permutation::from_cycles(m, &[&[0, 1]])?;
    let long: Vec<u32> = (0..m as u32).collect();
    let cycle = Permutation::from_cycles(m, &[&long])?;
    FiniteGroup::closure(format!("S{m}"), &[transposition, cycle], cap)
}

/// Alternating group on `m` points, generated by the 3-cycles `(0 1 i)`.
pub fn build_alternating(m: usize, cap: usize) -> Result<FiniteGroup> {
    check_range(m, 2)?;
    let mut gens: Vec<Permutation> = (2..m as u32)
        .map(|i| Permutation::from_cycles(m, &[&[0, 1, i]]))
        .collect::<Result<_>>()?;
    if gens.is_empty() {
        gens.push(Permutation::identity(m));
    }
    FiniteGroup::closure(format!("A{m}"), &gens, cap)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `q(q²−1)/gcd(2,q−1)`.
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / gcd(2, q - 1)
}

/// `q³(q³−1)(q²−1)/gcd(3,q−1)`.
pub fn psl3_order(q: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1) / gcd(3, q - 1)
}

/// Projective points of `GF(q)^dim`, each normalized so its last nonzero
/// coordinate is 1, grouped by the position of that coordinate and then
/// by field codes of the free coordinates (first coordinate fastest).
/// For `dim = 2` this gives `[1:0]` first and then `[x:1]` in code order.
fn projective_points(field: &FiniteField, dim: usize) -> Vec<Vec<u32>> {
    let q = field.order();
    let mut points = Vec::new();
    for pivot in 0..dim {
        let free = pivot;
        let count = (q as usize).pow(free as u32);
        for code in 0..count {
            let mut v = vec![0u32; dim];
            let mut c = code;
            for slot in v.iter_mut().take(free) {
                *slot = (c % q as usize) as u32;
                c /= q as usize;
            }
            v[pivot] = 1;
            points.push(v);
        }
    }
    points
}

fn normalize(field: &FiniteField, v: &mut [u32]) {
    let last = v.iter().rposition(|&x| x != 0).expect("nonzero vector");
    let s = field.inv(v[last]);
    for x in v.iter_mut() {
        *x = field.mul(*x, s);
    }
}

/// Permutation induced by the row-vector action `v ↦ vA` on projective points.
fn matrix_action(
    field: &FiniteField,
    points: &[Vec<u32>],
    lookup: &std::collections::HashMap<Vec<u32>, u32>,
    matrix: &[Vec<u32>],
) -> Result<Permutation> {
    let dim = matrix.len();
    let images = points
        .iter()
        .map(|v| {
            let mut w: Vec<u32> = (0..dim)
                .map(|j| (0..dim).fold(0, |acc, i| field.add(acc, field.mul(v[i], matrix[i][j]))))
                .collect();
            normalize(field, &mut w);
            lookup[&w]
        })
        .collect();
    Permutation::from_images(images)
}

fn identity_matrix(dim: usize) -> Vec<Vec<u32>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| u32::from(i == j)).collect())
        .collect()
}

fn lie_field(q: u32) -> Result<FiniteField> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    FiniteField::new(q)
}

fn projective_group(
    label: String,
    field: &FiniteField,
    dim: usize,
    generators: &[Vec<Vec<u32>>],
    cap: usize,
) -> Result<FiniteGroup> {
    let points = projective_points(field, dim);
    let lookup = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let perms: Vec<Permutation> = generators
        .iter()
        .map(|m| matrix_action(field, &points, &lookup, m))
        .collect::<Result<_>>()?;
    Ok(FiniteGroup::closure(label, &perms, cap)?.with_lie(LieInfo {
        dimension: dim as u32,
        q: field.order(),
        characteristic: field.characteristic(),
    }))
}

/// PSL(2,q) acting on the `q+1` points of the projective line.
pub fn build_psl2(q: u32, cap: usize) -> Result<FiniteGroup> {
    let field = lie_field(q)?;
    if q < 4 {
        return Err(Error::Unsupported(format!("PSL(2,{q}) needs q ≥ 4")));
    }
    if psl2_order(q as u64) > cap as u64 {
        return Err(Error::CapExceeded {
            cap,
            what: format!("|PSL(2,{q})| = {}", psl2_order(q as u64)),
        });
    }
    let w = field.primitive_element();
    let one = 1;
    let minus_one = field.neg(1);
    let gens = vec![
        vec![vec![one, one], vec![0, one]],
        vec![vec![0, one], vec![minus_one, 0]],
        vec![vec![w, 0], vec![0, field.inv(w)]],
    ];
    projective_group(format!("PSL(2,{q})"), &field, 2, &gens, cap)
}

/// PSL(3,q) acting on the `q²+q+1` points of the projective plane.
pub fn build_psl3(q: u32, cap: usize) -> Result<FiniteGroup> {
    let field = lie_field(q)?;
    if !(2..=4).contains(&q) {
        return Err(Error::Unsupported(format!("PSL(3,{q}) supported for q ∈ {{2,3,4}}")));
    }
    if psl3_order(q as u64) > cap as u64 {
        return Err(Error::CapExceeded {
            cap,
            what: format!("|PSL(3,{q})| = {}", psl3_order(q as u64)),
        });
    }
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut e = identity_matrix(3);
                e[i][j] = 1;
                gens.push(e);
            }
        }
    }
    if q > 2 {
        let w = field.primitive_element();
        let mut d = identity_matrix(3);
        d[0][0] = w;
        d[1][1] = field.inv(w);
        gens.push(d);
    }
    projective_group(format!("PSL(3,{q})"), &field, 3, &gens, cap)
}

/// Parses `S:n`, `A:n`, `PSL2:q`, `PSL3:q`, or reads a generator file
/// (one permutation per line in cycle notation; `#` starts a comment).
pub fn from_spec(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let spec = spec.trim();
    if let Some((kind, arg)) = spec.split_once(':') {
        let parse = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad group parameter {s:?}")))
        };
        match kind.trim().to_ascii_uppercase().as_str() {
            "S" => return build_symmetric(parse(arg)? as usize, cap),
            "A" => return build_alternating(parse(arg)? as usize, cap),
            "PSL2" => return build_psl2(parse(arg)?, cap),
            "PSL3" => return build_psl3(parse(arg)?, cap),
            _ => {}
        }
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.to_string());
        return from_generator_text(&label, &text, cap);
    }
    Err(Error::Parse(format!("unrecognized group spec {spec:?}")))
}

pub fn from_generator_text(label: &str, text: &str, cap: usize) -> Result<FiniteGroup> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let perms: Vec<Permutation> = lines
        .iter()
        .map(|l| Permutation::parse_cycles(l, 0))
        .collect::<Result<_>>()?;
    let degree = perms.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
    let perms: Vec<Permutation> = if perms.is_empty() {
        vec![Permutation::identity(degree)]
    } else {
        perms.iter().map(|p| p.extended(degree)).collect()
    };
    FiniteGroup::closure(label, &perms, cap)
}
