//! Grids, sums, multifork insertion and the congruence-realising builders.

mod decompose;
mod multifork;
mod theorem2;

pub use decompose::{multifork_decompose, replay, CellLocator, InsertionScript, ScriptStep};
pub use multifork::{multifork_insert, Insertion};
pub use theorem2::{
    expected_jir_con, glued_product_check, theorem2_h, theorem2_l, PatchBuild, ProductCheck,
};

use crate::diagram::{recognize_rectangular, RectDiagram};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;

/// Name of the grid element with join coordinates `(j, i)`.
pub fn grid_name(j: usize, i: usize) -> String {
    format!("g{j}_{i}")
}

/// The product of chains `C_{m+1} × C_{n+1}`; the lower-left chain has
/// length `m` and the lower-right chain length `n`.
pub fn grid(m: usize, n: usize) -> Result<RectDiagram> {
    if m == 0 || n == 0 {
        return Err(Error::Invalid("grid dimensions must be at least 1".into()));
    }
    let mut names = Vec::new();
    let mut covers = Vec::new();
    for j in 0..=m {
        for i in 0..=n {
            names.push(grid_name(j, i));
            if j > 0 {
                covers.push((grid_name(j - 1, i), grid_name(j, i)));
            }
            if i > 0 {
                covers.push((grid_name(j, i - 1), grid_name(j, i)));
            }
        }
    }
    let l = FiniteLattice::new(&names, &covers)?;
    let mut corners = recognize_rectangular(&l)?;
    if l.name(corners.left) != grid_name(m, 0) {
        corners = crate::diagram::recognize_oriented(&l, Some(l.index_of(&grid_name(m, 0))?))?;
    }
    RectDiagram::c1_layout(l, corners)
}

/// Glued sum `L₁ ∔ ⋯ ∔ Lₙ`: the top of each summand is identified with the
/// bottom of the next. Elements of summand `i` (from 1) are renamed `i:x`;
/// an identified pair keeps the name from the lower summand.
pub fn glued_sum(parts: &[&FiniteLattice]) -> Result<FiniteLattice> {
    if parts.is_empty() {
        return Err(Error::Empty);
    }
    let mut names: Vec<String> = Vec::new();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    let mut prev_top: Option<usize> = None;
    for (k, l) in parts.iter().enumerate() {
        let mut map = vec![0usize; l.len()];
        for x in 0..l.len() {
            if x == l.bottom() {
                if let Some(t) = prev_top {
                    map[x] = t;
                    continue;
                }
            }
            map[x] = names.len();
            names.push(format!("{}:{}", k + 1, l.name(x)));
        }
        covers.extend(l.edges().into_iter().map(|(a, b)| (map[a], map[b])));
        prev_top = Some(map[l.top()]);
    }
    FiniteLattice::from_poset(FinitePoset::from_indexed(names, &covers)?)
}

/// Direct product; elements are named `(x,y,…)`.
pub fn product(parts: &[&FiniteLattice]) -> Result<FiniteLattice> {
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for l in parts {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..l.len()).map(move |x| {
                    let mut next = t.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    if parts.is_empty() {
        return Err(Error::Empty);
    }
    let index: std::collections::HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut covers = Vec::new();
    for (a, t) in tuples.iter().enumerate() {
        for (k, l) in parts.iter().enumerate() {
            for &up in l.upper_covers(t[k]) {
                let mut u = t.clone();
                u[k] = up;
                covers.push((a, index[u.as_slice()]));
            }
        }
    }
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(parts).map(|(&x, l)| l.name(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteLattice::from_poset(FinitePoset::from_indexed(names, &covers)?)
}

/// The patch lattice obtained by inserting a rank-`t` multifork into the
/// single cell of `B₂`.
pub fn s_lattice(t: usize) -> Result<RectDiagram> {
    let b2 = grid(1, 1)?;
    let top = b2.lattice().top();
    Ok(multifork_insert(&b2, top, t)?.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = grid(2, 3).unwrap();
        assert_eq!(g.len(), 12);
        assert_eq!(g.dims(), (2, 3));
        assert_eq!(g.cells().len(), 6);
        assert!(g.cells().iter().all(|c| c.distributive));
        assert!(g.validate_c1().is_empty());
        assert_eq!(g.name(g.left_corner()), "g2_0");
    }

    #[test]
    fn glued_sums() {
        let c2 = FiniteLattice::chain(2);
        let c3 = glued_sum(&[&c2, &c2]).unwrap();
        assert_eq!(c3.len(), 3);
        assert!(c3.poset().cover_count() == 2);
        let b2 = grid(1, 1).unwrap();
        assert_eq!(glued_sum(&[b2.lattice(), b2.lattice()]).unwrap().len(), 7);
    }

    #[test]
    fn products() {
        let c2 = FiniteLattice::chain(2);
        let b3 = product(&[&c2, &c2, &c2]).unwrap();
        assert_eq!(b3.len(), 8);
        assert!(b3.is_distributive());
        let g = grid(1, 2).unwrap();
        assert!(crate::iso::is_isomorphic(
            &product(&[&c2, &FiniteLattice::chain(3)]).unwrap(),
            g.lattice()
        )
        .is_some());
    }
}
