//! Reed–Solomon style MDS codes over a [`FieldSpec`] and the contiguous
//! node placement used by the cache model.
//!
//! A file is a matrix `W` with `L` rows and `k_sym` columns: column `j` is
//! message packet `j`, a run of `L` field symbols. Coded packets are the
//! columns of `P = W × G`.

use thiserror::Error;

use crate::galois::{FieldMatrix, FieldSpec, GaloisError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MdsError {
    #[error("field {field} has only {available} nonzero evaluation points, need {needed}")]
    FieldTooSmall {
        field: String,
        available: u64,
        needed: usize,
    },
    #[error("need 1 <= k_sym <= n_sym (got k_sym={k}, n_sym={n})")]
    BadShape { k: usize, n: usize },
    #[error("expected {expected} columns, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("column index {0} repeated or out of range")]
    BadColumn(usize),
    #[error("selected columns are linearly dependent")]
    Singular,
    #[error(transparent)]
    Field(#[from] GaloisError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsCode {
    k_sym: usize,
    n_sym: usize,
    generator: FieldMatrix,
    points: Vec<u32>,
}

/// Evaluation-style generator: `G[i][j] = x_j^i` with `x_j = j + 1`.
pub fn make_mds(k_sym: usize, n_sym: usize, field: FieldSpec) -> Result<MdsCode, MdsError> {
    if k_sym == 0 || k_sym > n_sym {
        return Err(MdsError::BadShape { k: k_sym, n: n_sym });
    }
    let available = field.order() - 1;
    if n_sym as u64 > available {
        return Err(MdsError::FieldTooSmall {
            field: field.to_string(),
            available,
            needed: n_sym,
        });
    }
    let points: Vec<u32> = (1..=n_sym as u32).collect();
    let mut generator = FieldMatrix::zeros(field, k_sym, n_sym);
    for (j, &x) in points.iter().enumerate() {
        for i in 0..k_sym {
            generator.set(i, j, field.pow(x, i as u64));
        }
    }
    Ok(MdsCode {
        k_sym,
        n_sym,
        generator,
        points,
    })
}

impl MdsCode {
    pub fn k_sym(&self) -> usize {
        self.k_sym
    }

    pub fn n_sym(&self) -> usize {
        self.n_sym
    }

    pub fn field(&self) -> FieldSpec {
        self.generator.field()
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn evaluation_points(&self) -> &[u32] {
        &self.points
    }

    /// Column `j` of the generator, the coefficient vector of packet `j`.
    pub fn coefficients(&self, j: usize) -> Vec<u32> {
        self.generator.column(j)
    }

    /// Same code with the first `k_sym` columns turned into the identity.
    pub fn systematic(&self) -> Result<Self, MdsError> {
        let head: Vec<usize> = (0..self.k_sym).collect();
        let inv = self.generator.select_columns(&head).inverse()?;
        Ok(Self {
            generator: inv.mul(&self.generator)?,
            ..self.clone()
        })
    }

    /// `P = W × G`; `file` is `L × k_sym`, the result `L × n_sym`.
    pub fn encode(&self, file: &FieldMatrix) -> Result<FieldMatrix, MdsError> {
        if file.cols() != self.k_sym {
            return Err(MdsError::SizeMismatch {
                expected: self.k_sym,
                got: file.cols(),
            });
        }
        Ok(file.mul(&self.generator)?)
    }

    /// Recovers `W` from the `k_sym` packets at `columns`; `packets` holds
    /// those packets as columns in the same order.
    pub fn decode_any_k(
        &self,
        columns: &[usize],
        packets: &FieldMatrix,
    ) -> Result<FieldMatrix, MdsError> {
        if columns.len() != self.k_sym {
            return Err(MdsError::SizeMismatch {
                expected: self.k_sym,
                got: columns.len(),
            });
        }
        if packets.cols() != self.k_sym {
            return Err(MdsError::SizeMismatch {
                expected: self.k_sym,
                got: packets.cols(),
            });
        }
        let mut seen = vec![false; self.n_sym];
        for &c in columns {
            if c >= self.n_sym || seen[c] {
                return Err(MdsError::BadColumn(c));
            }
            seen[c] = true;
        }
        // W G_S = P_S  <=>  G_S^T W^T = P_S^T
        let gs = self.generator.select_columns(columns);
        let wt = match gs.transpose().solve(&packets.transpose()) {
            Ok(wt) => wt,
            Err(GaloisError::Singular) => return Err(MdsError::Singular),
            Err(e) => return Err(e.into()),
        };
        Ok(wt.transpose())
    }

    /// Pads `symbols` with zeros to a multiple of `k_sym` and lays them out
    /// packet by packet: symbol `s` goes to packet `s / L`, row `s % L`.
    pub fn encode_symbols(&self, symbols: &[u32]) -> Result<EncodedFile, MdsError> {
        let field = self.field();
        let rows = symbols.len().div_ceil(self.k_sym).max(1);
        let mut w = FieldMatrix::zeros(field, rows, self.k_sym);
        for (s, &v) in symbols.iter().enumerate() {
            if !field.contains(v) {
                return Err(GaloisError::NotCanonical {
                    value: v,
                    order: field.order(),
                }
                .into());
            }
            w.set(s % rows, s / rows, v);
        }
        Ok(EncodedFile {
            packets: self.encode(&w)?,
            true_len: symbols.len(),
        })
    }

    pub fn decode_symbols(
        &self,
        columns: &[usize],
        encoded: &EncodedFile,
    ) -> Result<Vec<u32>, MdsError> {
        let chosen = encoded.packets.select_columns(columns);
        let w = self.decode_any_k(columns, &chosen)?;
        let rows = w.rows();
        Ok((0..encoded.true_len)
            .map(|s| w.get(s % rows, s / rows))
            .collect())
    }
}

/// Coded packets of a padded file plus its unpadded length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedFile {
    pub packets: FieldMatrix,
    pub true_len: usize,
}

/// Node `i` (0-based) stores the contiguous packet block
/// `i·t .. (i+1)·t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    node_count: usize,
    packets_per_node: usize,
}

impl Placement {
    pub fn new(node_count: usize, packets_per_node: usize) -> Self {
        Self {
            node_count,
            packets_per_node,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn packets_per_node(&self) -> usize {
        self.packets_per_node
    }

    pub fn total_packets(&self) -> usize {
        self.node_count * self.packets_per_node
    }

    pub fn columns(&self, node: usize) -> std::ops::Range<usize> {
        assert!(node < self.node_count, "node {node} out of range");
        node * self.packets_per_node..(node + 1) * self.packets_per_node
    }

    pub fn columns_of(&self, nodes: &[usize]) -> Vec<usize> {
        nodes.iter().flat_map(|&i| self.columns(i)).collect()
    }

    pub fn owner(&self, column: usize) -> usize {
        column / self.packets_per_node
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn small_code_every_pair_of_columns_is_independent() {
        let code = make_mds(2, 4, FieldSpec::prime(17).unwrap()).unwrap();
        let all = subsets(4, 2);
        assert_eq!(all.len(), 6);
        for cols in all {
            assert_eq!(code.generator().select_columns(&cols).rank(), 2, "{cols:?}");
        }
    }

    #[test]
    fn trivial_code_is_identity() {
        let f = FieldSpec::default_prime();
        let code = make_mds(1, 1, f).unwrap();
        assert_eq!(*code.generator(), FieldMatrix::identity(f, 1));
    }

    #[test]
    fn field_too_small() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            make_mds(2, 5, f),
            Err(MdsError::FieldTooSmall { .. })
        ));
        assert!(make_mds(2, 4, f).is_ok());
    }

    #[test]
    fn eight_of_sixteen_mds_in_binary_field() {
        let f = FieldSpec::binary(5, 0b100101).unwrap();
        let code = make_mds(8, 16, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let mut cols: Vec<usize> = (0..16).collect();
            rand::seq::SliceRandom::shuffle(cols.as_mut_slice(), &mut rng);
            cols.truncate(8);
            assert_eq!(code.generator().select_columns(&cols).rank(), 8);
        }
    }

    #[test]
    fn zero_file_encodes_to_zero() {
        let f = FieldSpec::default_prime();
        let code = make_mds(8, 16, f).unwrap();
        assert!(code.encode(&FieldMatrix::zeros(f, 3, 8)).unwrap().is_zero());
    }

    #[test]
    fn systematic_read_off() {
        let f = FieldSpec::default_prime();
        let code = make_mds(3, 6, f).unwrap().systematic().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let w = FieldMatrix::random(f, 4, 3, &mut rng);
        let p = code.encode(&w).unwrap();
        assert_eq!(p.select_columns(&[0, 1, 2]), w);
    }

    #[test]
    fn every_subset_round_trips() {
        let f = FieldSpec::default_prime();
        let code = make_mds(3, 6, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = FieldMatrix::random(f, 5, 3, &mut rng);
        let p = code.encode(&w).unwrap();
        for cols in subsets(6, 3) {
            let got = code.decode_any_k(&cols, &p.select_columns(&cols)).unwrap();
            assert_eq!(got, w);
        }
    }

    #[test]
    fn decode_rejects_bad_columns() {
        let f = FieldSpec::default_prime();
        let code = make_mds(2, 4, f).unwrap();
        let p = FieldMatrix::zeros(f, 1, 2);
        assert_eq!(code.decode_any_k(&[1, 1], &p), Err(MdsError::BadColumn(1)));
        assert!(matches!(
            code.decode_any_k(&[1], &p),
            Err(MdsError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn symbol_padding_round_trip() {
        let f = FieldSpec::default_prime();
        let code = make_mds(3, 5, f).unwrap();
        let data: Vec<u32> = (0..10).map(|i| (i * 37) % 257).collect();
        let enc = code.encode_symbols(&data).unwrap();
        assert_eq!(enc.packets.rows(), 4);
        assert_eq!(code.decode_symbols(&[4, 0, 2], &enc).unwrap(), data);
    }

    #[test]
    fn placement_blocks() {
        let p = Placement::new(4, 4);
        assert_eq!(p.columns(0), 0..4);
        assert_eq!(p.columns(3), 12..16);
        assert_eq!(p.columns_of(&[1, 3]), vec![4, 5, 6, 7, 12, 13, 14, 15]);
        assert_eq!(p.owner(9), 2);
    }
}
