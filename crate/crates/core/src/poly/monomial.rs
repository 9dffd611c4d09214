use std::cmp::Ordering;

/// Exponent vector of a monomial. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    /// `x_var^power`.
    pub fn pure_power(n_vars: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; n_vars];
        e[var] = power;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// All monomials of total degree `degree` in `n_vars` variables, ascending.
    pub fn all_of_degree(n_vars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n_vars];
        fill(&mut cur, 0, degree, &mut out);
        out.sort();
        out
    }
}

fn fill(cur: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(Monomial(cur.clone()));
        return;
    }
    if cur.is_empty() {
        return;
    }
    for e in 0..=remaining {
        cur[idx] = e;
        fill(cur, idx + 1, remaining - e, out);
    }
    cur[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
