//! Dense coordinate vectors.

use crate::scalar::Scalar;

pub fn zeros<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = zeros(n);
    v[i] = S::one();
    v
}

pub fn is_zero<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(S::is_zero)
}

/// `acc += c * v`.
pub fn axpy<S: Scalar>(acc: &mut [S], c: &S, v: &[S]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c.mul_ref(x);
        }
    }
}

pub fn add_assign<S: Scalar>(acc: &mut [S], v: &[S]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

pub fn sub_assign<S: Scalar>(acc: &mut [S], v: &[S]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn scale<S: Scalar>(c: &S, v: &[S]) -> Vec<S> {
    v.iter().map(|x| c.mul_ref(x)).collect()
}

pub fn neg<S: Scalar>(v: &[S]) -> Vec<S> {
    v.iter().map(|x| -x.clone()).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x.mul_ref(y);
        }
    }
    acc
}

/// Nonzero coordinates as `(index, value)` pairs.
pub fn support<S: Scalar>(v: &[S]) -> Vec<(usize, S)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `(-1)^k` as a scalar.
pub fn sign<S: Scalar>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}
