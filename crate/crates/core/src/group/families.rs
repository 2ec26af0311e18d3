// Multiplication rules for the built-in families. Every encoding puts the
// identity at identifier 0.

use super::Group;

/// Mixed-radix digits of `x` over the moduli `dims`, least significant first.
fn digits(mut x: usize, dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .map(|&d| {
            let r = x % d;
            x /= d;
            r
        })
        .collect()
}

fn undigits(ds: &[usize], dims: &[usize]) -> usize {
    ds.iter().zip(dims).rev().fold(0, |acc, (&v, &d)| acc * d + v)
}

fn abelian_add(a: usize, b: usize, dims: &[usize]) -> usize {
    let (da, db) = (digits(a, dims), digits(b, dims));
    let sum: Vec<usize> = da.iter().zip(&db).zip(dims).map(|((x, y), d)| (x + y) % d).collect();
    undigits(&sum, dims)
}

fn abelian_neg(a: usize, dims: &[usize]) -> usize {
    let neg: Vec<usize> = digits(a, dims).iter().zip(dims).map(|(x, d)| (d - x) % d).collect();
    undigits(&neg, dims)
}

pub(super) fn cyclic(n: usize, label: String) -> Group {
    Group::from_fn(n, label, |a, b| (a + b) % n)
}

pub(super) fn abelian(dims: &[usize], label: String) -> Group {
    let n = dims.iter().product();
    Group::from_fn(n, label, |a, b| abelian_add(a, b, dims))
}

/// Order `2m`; `r^i s^j` is `i + m*j`.
pub(super) fn dihedral(order: usize, label: String) -> Group {
    let m = order / 2;
    Group::from_fn(order, label, |a, b| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
        rot + m * ((j + l) % 2)
    })
}

/// `A ⋊ Z2` with the flip acting by inversion; `(a, j)` is `a + |A|*j`.
pub(super) fn generalized_dihedral(dims: &[usize], label: String) -> Group {
    let m: usize = dims.iter().product();
    Group::from_fn(2 * m, label, |x, y| {
        let (a, j) = (x % m, x / m);
        let (b, l) = (y % m, y / m);
        let b = if j == 0 { b } else { abelian_neg(b, dims) };
        abelian_add(a, b, dims) + m * ((j + l) % 2)
    })
}

/// `⟨x, y | x^{2m} = 1, y² = x^m, y⁻¹xy = x⁻¹⟩`, order `4m`; `x^a y^b` is
/// `a + 2m*b`.
pub(super) fn dicyclic(m: usize, label: String) -> Group {
    let h = 2 * m;
    Group::from_fn(4 * m, label, |u, v| {
        let (a, b) = (u % h, u / h);
        let (c, d) = (v % h, v / h);
        match (b, d) {
            (0, _) => (a + c) % h + h * d,
            // x^a y x^c = x^{a-c} y
            (_, 0) => (a + h - c) % h + h,
            // x^a y x^c y = x^{a-c} y² = x^{a-c+m}
            _ => (a + h - c + m) % h,
        }
    })
}

/// `Z_m ⋊ Z_k` where the generator of `Z_k` acts as `x ↦ x^r`; `x^a y^b`
/// is `a + m*b`. Requires `r^k ≡ 1 (mod m)`.
pub(super) fn metacyclic(m: usize, k: usize, r: usize, label: String) -> Group {
    let mut rpow = vec![1 % m; k];
    for b in 1..k {
        rpow[b] = rpow[b - 1] * r % m;
    }
    Group::from_fn(m * k, label, |u, v| {
        let (a, b) = (u % m, u / m);
        let (c, d) = (v % m, v / m);
        (a + rpow[b] * c) % m + m * ((b + d) % k)
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)));
    inversions.filter(|&(i, j)| p[i] > p[j]).count() % 2 == 0
}

/// Permutations of `0..degree` in lexicographic order (identity first),
/// composed right to left.
pub(super) fn permutations(degree: usize, even_only: bool, label: String) -> Group {
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..degree).collect();
    loop {
        if !even_only || is_even(&p) {
            perms.push(p.clone());
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    Group::from_fn(perms.len(), label, |a, b| {
        let (pa, pb) = (&perms[a], &perms[b]);
        let composed: Vec<usize> = pb.iter().map(|&i| pa[i]).collect();
        index[&composed]
    })
}

/// `(i, j)` is `i*|H| + j`.
pub(super) fn direct_product(g: &Group, h: &Group, label: String) -> Group {
    let m = h.order();
    Group::from_fn(g.order() * m, label, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
}
