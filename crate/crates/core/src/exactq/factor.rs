//! Sparse exact LU factorization of a simplex basis, with product-form
//! updates between refactorizations.
//!
//! Basis columns are addressed by position `0..m`, constraint rows by row
//! index `0..m`. `ftran` maps a row-indexed vector `a` to the
//! position-indexed solution of `B x = a`; `btran` maps a position-indexed
//! `c` to the row-indexed solution of `Bᵀ y = c`.

use super::Rational;

#[derive(Clone, Debug)]
struct Step {
    row: usize,
    pos: usize,
    piv: Rational,
    /// Pivot row entries other than the pivot, by position.
    upper: Vec<(usize, Rational)>,
    /// `(row, multiplier)` for every row eliminated against this pivot.
    lower: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug)]
struct Eta {
    pos: usize,
    piv: Rational,
    col: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug)]
pub(crate) struct BasisFactor {
    m: usize,
    steps: Vec<Step>,
    etas: Vec<Eta>,
}

fn remove(v: &mut Vec<usize>, x: usize) {
    if let Some(i) = v.iter().position(|&y| y == x) {
        v.swap_remove(i);
    }
}

impl BasisFactor {
    /// Factor the basis whose column at position `p` is `columns[p]`
    /// (row-indexed sparse). Panics if the basis is singular.
    pub(crate) fn new(m: usize, columns: &[&[(usize, Rational)]]) -> Self {
        assert_eq!(columns.len(), m);
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (p, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                if !v.is_zero() {
                    rows[*r].push((p, v.clone()));
                    col_rows[p].push(*r);
                }
            }
        }
        let mut pos_done = vec![false; m];
        let mut row_done = vec![false; m];
        let mut steps = Vec::with_capacity(m);
        for _ in 0..m {
            // Markowitz-style choice: sparsest column, then its sparsest row.
            let q = (0..m)
                .filter(|&p| !pos_done[p])
                .min_by_key(|&p| (col_rows[p].len(), p))
                .expect("active column");
            let p = col_rows[q]
                .iter()
                .copied()
                .min_by_key(|&r| (rows[r].len(), r))
                .expect("singular basis");
            let prow = std::mem::take(&mut rows[p]);
            let piv = prow
                .iter()
                .find(|(c, _)| *c == q)
                .map(|(_, v)| v.clone())
                .expect("pivot entry");
            let others: Vec<usize> = col_rows[q].iter().copied().filter(|&r| r != p).collect();
            let mut lower = Vec::with_capacity(others.len());
            for i in others {
                let old = std::mem::take(&mut rows[i]);
                let f = &old.iter().find(|(c, _)| *c == q).expect("entry").1 / &piv;
                let mut merged = Vec::with_capacity(old.len() + prow.len());
                let (mut a, mut b) = (0, 0);
                while a < old.len() || b < prow.len() {
                    let ca = old.get(a).map_or(usize::MAX, |e| e.0);
                    let cb = prow.get(b).map_or(usize::MAX, |e| e.0);
                    if ca < cb {
                        merged.push(old[a].clone());
                        a += 1;
                    } else if cb < ca {
                        if cb != q {
                            merged.push((cb, -&(&f * &prow[b].1)));
                            col_rows[cb].push(i);
                        }
                        b += 1;
                    } else {
                        if ca != q {
                            let v = old[a].1.sub_mul(&f, &prow[b].1);
                            if v.is_zero() {
                                remove(&mut col_rows[ca], i);
                            } else {
                                merged.push((ca, v));
                            }
                        }
                        a += 1;
                        b += 1;
                    }
                }
                rows[i] = merged;
                lower.push((i, f));
            }
            for (c, _) in &prow {
                if *c != q {
                    remove(&mut col_rows[*c], p);
                }
            }
            col_rows[q].clear();
            pos_done[q] = true;
            row_done[p] = true;
            let upper = prow.into_iter().filter(|(c, _)| *c != q).collect();
            steps.push(Step {
                row: p,
                pos: q,
                piv,
                upper,
                lower,
            });
        }
        debug_assert!(row_done.iter().all(|&d| d));
        BasisFactor {
            m,
            steps,
            etas: Vec::new(),
        }
    }

    pub(crate) fn eta_count(&self) -> usize {
        self.etas.len()
    }

    /// Record that position `pos` now holds the column whose `ftran` was `alpha`.
    pub(crate) fn update(&mut self, pos: usize, alpha: &[Rational]) {
        let col = alpha
            .iter()
            .enumerate()
            .filter(|(i, v)| *i != pos && !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.etas.push(Eta {
            pos,
            piv: alpha[pos].clone(),
            col,
        });
    }

    pub(crate) fn ftran(&self, a: &[(usize, Rational)]) -> Vec<Rational> {
        let mut work = vec![Rational::zero(); self.m];
        for (r, v) in a {
            work[*r] = &work[*r] + v;
        }
        for s in &self.steps {
            let v = &work[s.row];
            if v.is_zero() {
                continue;
            }
            let v = v.clone();
            for (i, f) in &s.lower {
                work[*i] = work[*i].sub_mul(f, &v);
            }
        }
        let mut res = vec![Rational::zero(); self.m];
        for s in self.steps.iter().rev() {
            let mut acc = std::mem::replace(&mut work[s.row], Rational::zero());
            for (j, u) in &s.upper {
                if !res[*j].is_zero() {
                    acc = acc.sub_mul(u, &res[*j]);
                }
            }
            if !acc.is_zero() {
                res[s.pos] = &acc / &s.piv;
            }
        }
        for e in &self.etas {
            if res[e.pos].is_zero() {
                continue;
            }
            let v = &res[e.pos] / &e.piv;
            for (i, a) in &e.col {
                res[*i] = res[*i].sub_mul(a, &v);
            }
            res[e.pos] = v;
        }
        res
    }

    pub(crate) fn btran(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        for e in self.etas.iter().rev() {
            let mut acc = c[e.pos].clone();
            for (i, a) in &e.col {
                if !c[*i].is_zero() {
                    acc = acc.sub_mul(a, &c[*i]);
                }
            }
            c[e.pos] = if acc.is_zero() { acc } else { &acc / &e.piv };
        }
        let mut y = vec![Rational::zero(); self.m];
        for s in &self.steps {
            let v = std::mem::replace(&mut c[s.pos], Rational::zero());
            if v.is_zero() {
                continue;
            }
            let w = &v / &s.piv;
            for (j, u) in &s.upper {
                c[*j] = c[*j].sub_mul(u, &w);
            }
            y[s.row] = w;
        }
        for s in self.steps.iter().rev() {
            let mut acc = std::mem::replace(&mut y[s.row], Rational::zero());
            for (i, f) in &s.lower {
                if !y[*i].is_zero() {
                    acc = acc.sub_mul(f, &y[*i]);
                }
            }
            y[s.row] = acc;
        }
        y
    }

    /// Row `pos` of `B⁻¹`, indexed by constraint row.
    pub(crate) fn inverse_row(&self, pos: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.m];
        c[pos] = Rational::one();
        self.btran(c)
    }
}
