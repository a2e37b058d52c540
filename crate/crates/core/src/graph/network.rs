//! Dense tensor networks with labelled indices.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::linalg::CMatrix;
use crate::scalar::Real;

/// Row-major tensor whose axes carry integer labels. A label shared by two
/// tensors is summed over on contraction.
#[derive(Clone, Debug)]
pub(crate) struct Tensor<T> {
    labels: Vec<usize>,
    dims: Vec<usize>,
    data: Vec<Complex<T>>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * dims[i + 1];
    }
    out
}

/// Advance a row-major multi-index; returns false after the last entry.
fn advance(idx: &mut [usize], dims: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

impl<T: Real> Tensor<T> {
    /// Builds a tensor; repeated labels are traced out.
    pub fn new(labels: Vec<usize>, dims: Vec<usize>, data: Vec<Complex<T>>) -> Self {
        assert_eq!(labels.len(), dims.len());
        assert_eq!(dims.iter().product::<usize>(), data.len());
        let mut t = Self { labels, dims, data };
        t.trace_repeated();
        t
    }

    pub fn scalar(z: Complex<T>) -> Self {
        Self { labels: vec![], dims: vec![], data: vec![z] }
    }

    pub fn from_matrix(row: usize, col: usize, m: &CMatrix<T>) -> Self {
        Self::new(vec![row, col], vec![m.rows(), m.cols()], m.data().to_vec())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    fn trace_repeated(&mut self) {
        while let Some((i, j)) = self.repeated_pair() {
            let keep: Vec<usize> = (0..self.labels.len()).filter(|&k| k != i && k != j).collect();
            let new_dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
            let new_strides = strides(&new_dims);
            let mut out = vec![Complex::zero(); new_dims.iter().product()];
            let mut idx = vec![0; self.dims.len()];
            let mut flat = 0;
            loop {
                if idx[i] == idx[j] {
                    let pos: usize = keep.iter().zip(&new_strides).map(|(&k, s)| idx[k] * s).sum();
                    out[pos] += self.data[flat];
                }
                flat += 1;
                if !advance(&mut idx, &self.dims) {
                    break;
                }
            }
            self.labels = keep.iter().map(|&k| self.labels[k]).collect();
            self.dims = new_dims;
            self.data = out;
        }
    }

    fn repeated_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.labels.len() {
            for j in i + 1..self.labels.len() {
                if self.labels[i] == self.labels[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Reorders axes so that labels appear in `order`.
    fn permuted(&self, order: &[usize]) -> Self {
        let positions: Vec<usize> = order
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l).expect("label present"))
            .collect();
        let new_dims: Vec<usize> = positions.iter().map(|&p| self.dims[p]).collect();
        let new_strides = strides(&new_dims);
        let mut stride_of_old = vec![0; self.dims.len()];
        for (k, &p) in positions.iter().enumerate() {
            stride_of_old[p] = new_strides[k];
        }
        let mut out = vec![Complex::zero(); self.data.len()];
        let mut idx = vec![0; self.dims.len()];
        for z in &self.data {
            let pos: usize = idx.iter().zip(&stride_of_old).map(|(i, s)| i * s).sum();
            out[pos] = *z;
            advance(&mut idx, &self.dims);
        }
        Self { labels: order.to_vec(), dims: new_dims, data: out }
    }

    fn shared_with(&self, other: &Self) -> Vec<usize> {
        self.labels.iter().copied().filter(|l| other.labels.contains(l)).collect()
    }

    fn result_size(&self, other: &Self) -> usize {
        let shared = self.shared_with(other);
        let free = |t: &Self| -> usize {
            t.labels
                .iter()
                .zip(&t.dims)
                .filter(|(l, _)| !shared.contains(l))
                .map(|(_, d)| *d)
                .product()
        };
        free(self).saturating_mul(free(other))
    }

    pub fn contract(&self, other: &Self) -> Self {
        let shared = self.shared_with(other);
        let keep_a: Vec<usize> = self.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
        let keep_b: Vec<usize> = other.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
        let a = self.permuted(&[keep_a.clone(), shared.clone()].concat());
        let b = other.permuted(&[shared.clone(), keep_b.clone()].concat());
        let s: usize = a.dims[keep_a.len()..].iter().product();
        let ka = a.data.len() / s;
        let kb = b.data.len() / s;
        let mut out = vec![Complex::zero(); ka * kb];
        for i in 0..ka {
            let row = &mut out[i * kb..(i + 1) * kb];
            for k in 0..s {
                let x = a.data[i * s + k];
                if x.is_zero() {
                    continue;
                }
                for (o, y) in row.iter_mut().zip(&b.data[k * kb..(k + 1) * kb]) {
                    *o += x * y;
                }
            }
        }
        let dims = [&a.dims[..keep_a.len()], &b.dims[shared.len()..]].concat();
        Self { labels: [keep_a, keep_b].concat(), dims, data: out }
    }
}

/// Contracts a whole network greedily (smallest intermediate first) and
/// returns the entries of the result with axes ordered as `open`.
pub(crate) fn contract_all<T: Real>(mut tensors: Vec<Tensor<T>>, open: &[usize]) -> Vec<Complex<T>> {
    if tensors.is_empty() {
        tensors.push(Tensor::scalar(Complex::one()));
    }
    while tensors.len() > 1 {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                if tensors[i].shared_with(&tensors[j]).is_empty() {
                    continue;
                }
                let cost = tensors[i].result_size(&tensors[j]);
                if best.map_or(true, |(_, _, c)| cost < c) {
                    best = Some((i, j, cost));
                }
            }
        }
        let (i, j) = match best {
            Some((i, j, _)) => (i, j),
            None => {
                let mut order: Vec<usize> = (0..tensors.len()).collect();
                order.sort_by_key(|&k| (tensors[k].len(), k));
                let (a, b) = (order[0].min(order[1]), order[0].max(order[1]));
                (a, b)
            }
        };
        let b = tensors.remove(j);
        let a = tensors.remove(i);
        tensors.push(a.contract(&b));
    }
    let t = tensors.pop().expect("one tensor left");
    let mut sorted_open = open.to_vec();
    sorted_open.sort_unstable();
    let mut have = t.labels.clone();
    have.sort_unstable();
    assert_eq!(have, sorted_open, "open labels of the network");
    t.permuted(open).data
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn matrix_product_and_trace() {
        let a = CMatrix::from_vec(2, 2, vec![c(1.0), c(2.0), c(3.0), c(4.0)]);
        let b = CMatrix::from_vec(2, 2, vec![c(0.0), c(1.0), c(1.0), c(0.0)]);
        let ab = &a * &b;
        let out = contract_all(vec![Tensor::from_matrix(0, 1, &a), Tensor::from_matrix(1, 2, &b)], &[0, 2]);
        assert_eq!(out, ab.data().to_vec());
        let tr = contract_all(vec![Tensor::from_matrix(0, 1, &a), Tensor::from_matrix(1, 0, &b)], &[]);
        assert_eq!(tr[0], ab.trace());
        let self_trace = contract_all(vec![Tensor::from_matrix(5, 5, &a)], &[]);
        assert_eq!(self_trace[0], c(5.0));
    }

    #[test]
    fn transpose_by_open_order() {
        let a = CMatrix::from_vec(2, 3, (0..6).map(|x| c(x as f64)).collect());
        let out = contract_all(vec![Tensor::from_matrix(0, 1, &a)], &[1, 0]);
        assert_eq!(out, a.transpose().data().to_vec());
    }

    #[test]
    fn outer_product_when_disconnected() {
        let v = Tensor::new(vec![0], vec![2], vec![c(1.0), c(2.0)]);
        let w = Tensor::new(vec![1], vec![2], vec![c(3.0), c(5.0)]);
        let out = contract_all(vec![v, w], &[0, 1]);
        assert_eq!(out, vec![c(3.0), c(5.0), c(6.0), c(10.0)]);
    }
}
