//! Brute-force cross-check of the complement linearization.
//!
//! Written against plain `Ratio<i64>` with its own Lie bracket parser, Courant bracket,
//! pairing and elimination; only `𝒥`, `K` and `A0` are taken from the engine.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::four_dimensional;
use crate::expr::parse_double_element;
use crate::gcs::Gcs;
use crate::linalg::Subspace;
use crate::scalar::GaussianRational as G;
use crate::semiabelian::{complement_feasibility, search_semi_abelian, ComplementResult, SemiAbelianVerdict};
use crate::verify::type_one_structure;

type Q = Ratio<i64>;

/// Brute-force model of the complement problem.
pub struct Oracle {
    n: usize,
    /// `lie[i][j]` = `[e_i, e_j]` as a coordinate vector.
    lie: Vec<Vec<Vec<Q>>>,
    jmat: Vec<Vec<Q>>,
    k: Vec<Vec<Q>>,
    a0: Vec<Vec<Q>>,
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// `de^k` terms like `12+34`, `-12`, `31+42`; the `e^{ij}` coefficient of `de^k` is `−[e_i,e_j]_k`.
fn lie_from_salamon(s: &str) -> Vec<Vec<Vec<Q>>> {
    let entries: Vec<&str> = s.split(',').collect();
    let n = entries.len();
    let mut lie = vec![vec![vec![q(0); n]; n]; n];
    for (k, entry) in entries.iter().enumerate() {
        if entry.trim() == "0" {
            continue;
        }
        let mut sign = 1;
        let mut digits = Vec::new();
        for ch in entry.chars() {
            match ch {
                '+' => sign = 1,
                '-' => sign = -1,
                d => {
                    digits.push(d.to_digit(10).unwrap() as usize - 1);
                    if digits.len() == 2 {
                        let (i, j) = (digits[0], digits[1]);
                        lie[i][j][k] -= q(sign);
                        lie[j][i][k] += q(sign);
                        digits.clear();
                        sign = 1;
                    }
                }
            }
        }
    }
    lie
}

fn to_q(x: &G) -> Q {
    assert!(x.im.is_zero(), "oracle inputs are real");
    Q::new(x.re.numer().to_i64().unwrap(), x.re.denom().to_i64().unwrap())
}

fn to_qv(v: &[G]) -> Vec<Q> {
    v.iter().map(to_q).collect()
}

/// Coordinates of `w` in the columns of `basis` (square, invertible).
fn coordinates(basis: &[Vec<Q>], w: &[Q]) -> Vec<Q> {
    let m = w.len();
    let mut a: Vec<Vec<Q>> = (0..m).map(|r| basis.iter().map(|b| b[r]).chain([w[r]]).collect()).collect();
    for c in 0..m {
        let p = (c..m).find(|&r| !a[r][c].is_zero()).expect("basis is invertible");
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..m {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for t in 0..=m {
                    let sub = f * a[c][t];
                    a[r][t] -= sub;
                }
            }
        }
    }
    a.iter().map(|row| row[m]).collect()
}

impl Oracle {
    fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![q(0); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                for k in 0..self.n {
                    out[k] += x[i] * y[j] * self.lie[i][j][k];
                }
            }
        }
        out
    }

    /// `⟦X+α, Y+β⟧ = [X,Y] + ι_X dβ − ι_Y dα` with `(ι_X dβ)(Z) = −β([X,Z])`.
    fn courant(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let n = self.n;
        let (x, alpha) = u.split_at(n);
        let (y, beta) = v.split_at(n);
        let mut out = self.bracket(x, y);
        for z in 0..n {
            let mut ez = vec![q(0); n];
            ez[z] = q(1);
            let xz = self.bracket(x, &ez);
            let yz = self.bracket(y, &ez);
            let b: Q = (0..n).map(|t| beta[t] * xz[t]).sum();
            let a: Q = (0..n).map(|t| alpha[t] * yz[t]).sum();
            out.push(a - b);
        }
        out
    }

    fn pairing(&self, u: &[Q], v: &[Q]) -> Q {
        let n = self.n;
        let s: Q = (0..n).map(|i| v[n + i] * u[i] + u[n + i] * v[i]).sum();
        s / q(2)
    }

    fn apply_j(&self, u: &[Q]) -> Vec<Q> {
        self.jmat.iter().map(|row| row.iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    }

    fn graph_row(&self, i: usize, row: &[Q]) -> Vec<Q> {
        let mut x = self.a0[i].clone();
        for (j, s) in row.iter().enumerate() {
            for (t, kv) in self.k[j].iter().enumerate() {
                x[t] += s * kv;
            }
        }
        x
    }

    /// `Some(true/false)` once decidable from rows `0..=d`, `None` while it depends on later rows.
    fn member(&self, s: &[Vec<Q>], d: usize, w: &[Q]) -> Option<bool> {
        let mut basis = self.a0.clone();
        basis.extend(self.k.iter().cloned());
        let c = coordinates(&basis, w);
        let n = self.n;
        if (d + 1..n).any(|r| !c[r].is_zero()) {
            return None;
        }
        Some((0..n).all(|j| c[n + j] == (0..=d).map(|r| c[r] * s[r][j]).sum::<Q>()))
    }

    /// Every constraint that becomes decidable when row `d` is assigned.
    fn consistent(&self, s: &[Vec<Q>], xs: &[Vec<Q>], d: usize) -> bool {
        let jx: Vec<Vec<Q>> = xs.iter().map(|x| self.apply_j(x)).collect();
        for i in 0..=d {
            if !self.pairing(&xs[i], &xs[d]).is_zero() {
                return false;
            }
            if i < d {
                let b = self.courant(&xs[i], &xs[d]);
                let bj = self.courant(&jx[i], &jx[d]);
                if b != bj {
                    return false;
                }
            }
        }
        // membership tests may have been deferred from earlier rows
        for i in 0..=d {
            if self.member(s, d, &jx[i]) == Some(false) {
                return false;
            }
            for j in i + 1..=d {
                if self.member(s, d, &self.courant(&xs[i], &xs[j])) == Some(false) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self, grid: &[Q]) -> Option<Vec<Vec<Q>>> {
        let n = self.n;
        let rows: Vec<Vec<Q>> = (0..grid.len().pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let g = grid[code % grid.len()];
                        code /= grid.len();
                        g
                    })
                    .collect()
            })
            .collect();
        let mut s = Vec::new();
        let mut xs = Vec::new();
        self.descend(&rows, &mut s, &mut xs).then_some(s)
    }

    fn descend(&self, rows: &[Vec<Q>], s: &mut Vec<Vec<Q>>, xs: &mut Vec<Vec<Q>>) -> bool {
        let d = s.len();
        if d == self.n {
            return true;
        }
        for row in rows {
            s.push(row.clone());
            xs.push(self.graph_row(d, row));
            if self.consistent(s, xs, d) && self.descend(rows, s, xs) {
                return true;
            }
            s.pop();
            xs.pop();
        }
        false
    }
}

fn grid() -> Vec<Q> {
    vec![q(-1), Q::new(-1, 2), q(0), Q::new(1, 2), q(1)]
}

struct Instance {
    label: String,
    salamon: String,
    gcs: Gcs,
    k: Vec<Vec<G>>,
    a0: Vec<Vec<G>>,
}

fn sparse_grid_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<G>> {
    let values = [G::from_int(-1), G::frac(-1, 2), G::frac(1, 2), G::from_int(1)];
    (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.35) { values[rng.gen_range(0..4)].clone() } else { G::from_int(0) }).collect())
        .collect()
}

/// `a_i − Σ_j t_ij k_j`, so that `S = T` recovers `a_i`.
fn shifted(a: &[Vec<G>], k: &[Vec<G>], t: &[Vec<G>]) -> Vec<Vec<G>> {
    a.iter()
        .zip(t)
        .map(|(ai, ti)| {
            let mut x = ai.clone();
            for (kj, tij) in k.iter().zip(ti) {
                for (xv, kv) in x.iter_mut().zip(kj) {
                    *xv = &*xv - &(tij * kv);
                }
            }
            x
        })
        .collect()
}

fn instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    let mut out = Vec::new();
    for e in four_dimensional() {
        let alg = e.algebra().unwrap();
        for st in &e.structures {
            let gcs = st.build(&alg).unwrap();
            if !gcs.is_integrable() {
                continue;
            }
            if let SemiAbelianVerdict::SemiAbelian { pair, .. } = search_semi_abelian(&gcs, None).unwrap() {
                let a = pair.a.subspace().vectors();
                let k = pair.k.subspace().vectors();
                for _ in 0..2 {
                    let t = sparse_grid_matrix(&mut rng, 4);
                    out.push(Instance {
                        label: format!("{} {} (feasible by construction)", e.name, st.label),
                        salamon: e.salamon.clone(),
                        gcs: gcs.clone(),
                        a0: shifted(&a, &k, &t),
                        k: k.clone(),
                    });
                }
            }
        }
    }
    let gcs = type_one_structure("0,0,12,13").unwrap();
    let el = |s: &str| parse_double_element(s, 4).unwrap();
    let k: Vec<Vec<G>> = ["e4", "E1", "E2", "E3"].iter().map(|s| el(s)).collect();
    let a: Vec<Vec<G>> = ["E4", "e1", "e2", "e3"].iter().map(|s| el(s)).collect();
    for _ in 0..10 {
        let t = sparse_grid_matrix(&mut rng, 4);
        out.push(Instance {
            label: "filiform-4 type-one forced K".into(),
            salamon: "0,0,12,13".into(),
            gcs: gcs.clone(),
            a0: shifted(&a, &k, &t),
            k: k.clone(),
        });
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub instances: usize,
    pub agree: usize,
    pub feasible: usize,
    pub disagreements: Vec<String>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.agree == self.instances && self.instances >= 20 && self.feasible > 0 && self.feasible < self.instances
    }
}

/// Feasible instances come from known pairs with `A0` shifted by a sparse grid matrix;
/// infeasible ones perturb the complement of the forced kernel on the filiform algebra.
pub fn cross_validate() -> CrossValidation {
    let mut agree = 0;
    let mut feasible = 0;
    let mut notes = Vec::new();
    let list = instances();
    for inst in &list {
        let n = inst.gcs.n();
        let oracle = Oracle {
            n,
            lie: lie_from_salamon(&inst.salamon),
            jmat: (0..2 * n).map(|r| to_qv(inst.gcs.matrix().row(r))).collect(),
            k: inst.k.iter().map(|v| to_qv(v)).collect(),
            a0: inst.a0.iter().map(|v| to_qv(v)).collect(),
        };
        let brute = oracle.search(&grid()).is_some();
        let k = Subspace::span(2 * n, &inst.k);
        let a0 = Subspace::span(2 * n, &inst.a0);
        let solved = match complement_feasibility(&inst.gcs, &k, &a0) {
            Ok(ComplementResult::Feasible { .. }) => true,
            Ok(ComplementResult::Infeasible(_)) => false,
            Err(e) => {
                notes.push(format!("{}: {e}", inst.label));
                continue;
            }
        };
        feasible += brute as usize;
        if brute == solved {
            agree += 1;
        } else {
            notes.push(format!("{}: brute force {brute}, linear solve {solved}", inst.label));
        }
    }
    CrossValidation { instances: list.len(), agree, feasible, disagreements: notes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;

    #[test]
    fn bracket_parser_follows_the_coframe_convention() {
        let lie = lie_from_salamon("0,0,12,13");
        assert_eq!(lie[0][1], vec![q(0), q(0), q(-1), q(0)]);
        assert_eq!(lie[2][0], vec![q(0), q(0), q(0), q(1)]);
        let lie = lie_from_salamon("0,0,0,0,31+42,41-32");
        assert_eq!(lie[2][0][4], q(-1));
        assert_eq!(lie[2][1][5], q(1));
    }

    #[test]
    fn coordinates_invert_the_basis() {
        let basis = vec![vec![q(1), q(1)], vec![q(0), q(2)]];
        assert_eq!(coordinates(&basis, &[q(3), q(4)]), vec![q(3), q(1) / q(2)]);
    }

    #[test]
    fn grid_search_finds_the_shift() {
        let gcs = type_one_structure("0,0,0,12").unwrap();
        let el = |s: &str| parse_double_element(s, 4).unwrap();
        let a: Vec<Vector> = ["e1", "e2", "e4", "E3"].iter().map(|s| el(s)).collect();
        let k: Vec<Vector> = ["E1", "E2", "E4", "e3"].iter().map(|s| el(s)).collect();
        let mut t = vec![vec![G::from_int(0); 4]; 4];
        t[0][2] = G::frac(1, 2);
        t[3][1] = G::from_int(-1);
        let oracle = Oracle {
            n: 4,
            lie: lie_from_salamon("0,0,0,12"),
            jmat: (0..8).map(|r| to_qv(gcs.matrix().row(r))).collect(),
            k: k.iter().map(|v| to_qv(v)).collect(),
            a0: shifted(&a, &k, &t).iter().map(|v| to_qv(v)).collect(),
        };
        assert!(oracle.search(&grid()).is_some());
    }
}
