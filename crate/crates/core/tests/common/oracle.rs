//! Brute-force reference implementations. Nothing here calls the library's
//! product, composition, associativity or classification code; tables are
//! read once into a membership cube and everything else is direct loops.

use hypersemi::HyperOp;
use num_rational::Ratio;

pub type Q = Ratio<u64>;

/// `mem[a][b][x]` iff `x ∈ a ∘ b`.
pub struct Table {
    pub n: usize,
    pub mem: Vec<Vec<Vec<bool>>>,
}

impl Table {
    pub fn read(h: &HyperOp) -> Table {
        let n = h.order();
        let mem = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).map(|x| h.cell(a, b).contains(x)).collect())
                    .collect()
            })
            .collect();
        Table { n, mem }
    }

    pub fn from_bools(n: usize, mem: Vec<Vec<Vec<bool>>>) -> Table {
        Table { n, mem }
    }

    pub fn set_product(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let n = self.n;
        let mut out = vec![false; n];
        for x in 0..n {
            'search: for p in 0..n {
                for q in 0..n {
                    if a[p] && b[q] && self.mem[p][q][x] {
                        out[x] = true;
                        break 'search;
                    }
                }
            }
        }
        out
    }

    pub fn singleton(&self, a: usize) -> Vec<bool> {
        (0..self.n).map(|x| x == a).collect()
    }

    pub fn whole(&self) -> Vec<bool> {
        vec![true; self.n]
    }

    pub fn is_hypersemigroup(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let lhs = (0..n).any(|u| self.mem[x][y][u] && self.mem[u][z][w]);
                        let rhs = (0..n).any(|v| self.mem[y][z][v] && self.mem[x][v][w]);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn compose(&self, f: &[Q], g: &[Q]) -> Vec<Q> {
        let n = self.n;
        (0..n)
            .map(|a| {
                let mut best = Q::from_integer(0);
                for y in 0..n {
                    for z in 0..n {
                        if self.mem[y][z][a] {
                            let m = if f[y] < g[z] { f[y] } else { g[z] };
                            if m > best {
                                best = m;
                            }
                        }
                    }
                }
                best
            })
            .collect()
    }

    /// Class definitions by direct witness search; `class` indexes
    /// regular, intra-regular, left quasi-regular, right quasi-regular,
    /// semisimple in that order.
    pub fn class_holds(&self, class: usize) -> bool {
        let n = self.n;
        let cell = |p: usize, q: usize| -> Vec<bool> { self.mem[p][q].clone() };
        (0..n).all(|a| match class {
            0 => (0..n).any(|x| self.set_product(&cell(a, x), &self.singleton(a))[a]),
            1 => (0..n).any(|x| (0..n).any(|y| self.set_product(&cell(x, a), &cell(a, y))[a])),
            2 => (0..n).any(|x| (0..n).any(|y| self.set_product(&cell(x, a), &cell(y, a))[a])),
            3 => (0..n).any(|x| (0..n).any(|y| self.set_product(&cell(a, x), &cell(a, y))[a])),
            4 => (0..n).any(|x| {
                (0..n).any(|y| {
                    (0..n).any(|z| {
                        let left = self.set_product(&cell(x, a), &cell(y, a));
                        self.set_product(&left, &self.singleton(z))[a]
                    })
                })
            }),
            _ => unreachable!(),
        })
    }
}

pub fn q(p: u64, d: u64) -> Q {
    Q::new(p, d)
}
