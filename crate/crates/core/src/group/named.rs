use std::fmt;

use super::{prime_power_base, FiniteGroup, GroupError};

/// Families of groups that can be built directly from their presentations.
///
/// Orders, not family parameters, are used throughout: `Dihedral(8)` is
/// the symmetry group of the square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedGroup {
    Cyclic(usize),
    /// `<x, y | x^n = y^2 = 1, y^-1 x y = x^-1>` of order `2n`.
    Dihedral(usize),
    /// `<x, y | x^{2^{k-1}} = 1, x^{2^{k-2}} = y^2, y^-1 x y = x^-1>` of order `2^k`, `k >= 3`.
    GeneralizedQuaternion(usize),
    /// `<x, y | x^{2^{k-1}} = y^2 = 1, y^-1 x y = x^{-1+2^{k-2}}>` of order `2^k`, `k >= 4`.
    SemiDihedral(usize),
    /// Symmetric group on at most 4 points.
    Symmetric(usize),
    /// `(Z_p)^k`.
    ElementaryAbelian(usize, usize),
    DirectProduct(Box<NamedGroup>, Box<NamedGroup>),
}

impl NamedGroup {
    pub fn direct(a: NamedGroup, b: NamedGroup) -> Self {
        NamedGroup::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let invalid = |msg: String| Err(GroupError::InvalidParameter(msg));
        let g = match *self {
            NamedGroup::Cyclic(n) => {
                if n == 0 {
                    return invalid("Z_n needs n >= 1".into());
                }
                metacyclic(n, 1, 1, 0)
            }
            NamedGroup::Dihedral(order) => {
                if order < 2 || order % 2 != 0 {
                    return invalid(format!("D_{order}: order 2n needs n >= 1"));
                }
                let n = order / 2;
                metacyclic(n, 2, (n - 1).max(1) % n.max(1), 0)
            }
            NamedGroup::GeneralizedQuaternion(order) => {
                if !order.is_power_of_two() || order < 8 {
                    return invalid(format!("Q_{order}: order 2^k needs k >= 3 (x^(2^(k-2)) = y^2)"));
                }
                let m = order / 2;
                metacyclic(m, 2, m - 1, m / 2)
            }
            NamedGroup::SemiDihedral(order) => {
                if !order.is_power_of_two() || order < 16 {
                    return invalid(format!("SD_{order}: order 2^k needs k >= 4 (y^-1 x y = x^(-1+2^(k-2)))"));
                }
                let m = order / 2;
                metacyclic(m, 2, m / 2 - 1, 0)
            }
            NamedGroup::Symmetric(n) => {
                if !(1..=4).contains(&n) {
                    return invalid(format!("S_{n}: only 1 <= n <= 4 supported"));
                }
                let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                let mut swap: Vec<usize> = (0..n).collect();
                if n >= 2 {
                    swap.swap(0, 1);
                }
                FiniteGroup::from_generators(n, &[cycle, swap], String::new())?
            }
            NamedGroup::ElementaryAbelian(p, k) => {
                if prime_power_base(p) != Some(p) {
                    return invalid(format!("(Z_{p})^{k}: {p} is not prime"));
                }
                let zp = metacyclic(p, 1, 1, 0);
                let mut g = metacyclic(1, 1, 0, 0);
                for _ in 0..k {
                    g = g.direct_product(&zp);
                }
                g
            }
            NamedGroup::DirectProduct(ref a, ref b) => a.build()?.direct_product(&b.build()?),
        };
        Ok(g.with_name(self.to_string()))
    }
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroup::Cyclic(n) => write!(f, "Z{n}"),
            NamedGroup::Dihedral(n) => write!(f, "D{n}"),
            NamedGroup::GeneralizedQuaternion(n) => write!(f, "Q{n}"),
            NamedGroup::SemiDihedral(n) => write!(f, "SD{n}"),
            NamedGroup::Symmetric(n) => write!(f, "S{n}"),
            NamedGroup::ElementaryAbelian(p, 1) => write!(f, "Z{p}"),
            NamedGroup::ElementaryAbelian(p, k) => write!(f, "Z{p}^{k}"),
            NamedGroup::DirectProduct(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

/// `<x, y | x^m = 1, y^n = x^s, y x y^-1 = x^r>`, elements in normal form
/// `x^i y^j` with index `i * n + j`. Needs `r^n = 1` and `s r = s` mod `m`.
fn metacyclic(m: usize, n: usize, r: usize, s: usize) -> FiniteGroup {
    let pow_mod = |mut b: usize, mut e: usize| {
        let mut acc = 1 % m;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    };
    debug_assert_eq!(pow_mod(r, n), 1 % m);
    debug_assert_eq!((s * r) % m, s % m);
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, j) = (a / n, a % n);
        let twist = pow_mod(r, j);
        for b in 0..order {
            let (k, l) = (b / n, b % n);
            let mut e = (i + k * twist) % m;
            let mut t = j + l;
            if t >= n {
                t -= n;
                e = (e + s) % m;
            }
            table.push(e * n + t);
        }
    }
    FiniteGroup::from_trusted_table(table, order, String::new())
}
