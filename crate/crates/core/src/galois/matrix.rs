use std::fmt;

use rand::Rng;

use super::{FieldElement, FieldSpec, GaloisError};

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.data[i * size + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw row vectors; every entry must already be a
    /// canonical field value.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<u32>]) -> Result<Self, GaloisError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(GaloisError::Ragged);
            }
            for &v in row {
                if !field.contains(v) {
                    return Err(GaloisError::NotCanonical {
                        value: v,
                        order: field.order(),
                    });
                }
                data.push(v);
            }
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vec(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Self, GaloisError> {
        if data.len() != rows * cols {
            return Err(GaloisError::Ragged);
        }
        if let Some(&v) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(GaloisError::NotCanonical {
                value: v,
                order: field.order(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn column_vector(field: FieldSpec, values: &[u32]) -> Result<Self, GaloisError> {
        Self::from_vec(field, values.len(), 1, values.to_vec())
    }

    pub fn random<R: Rng + ?Sized>(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        let q = field.order();
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..q) as u32)
            .collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn element(&self, r: usize, c: usize) -> FieldElement {
        self.field
            .element(self.get(r, c))
            .expect("entries stay canonical")
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(self.field.contains(v), "non-canonical value {v}");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, columns.len());
        for r in 0..self.rows {
            for (j, &c) in columns.iter().enumerate() {
                out.data[r * columns.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, GaloisError> {
        if self.cols != other.cols || self.field != other.field {
            return Err(GaloisError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GaloisError> {
        if self.cols != other.rows || self.field != other.field {
            return Err(GaloisError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|&v| f.mul(v, s)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GaloisError> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(GaloisError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let f = self.field;
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GaloisError> {
        self.add(&other.scale(self.field.neg(1)))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    /// Pivots are the first nonzero entry scanning rows top-down, columns
    /// left to right.
    fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let idx = row * self.cols + c;
                self.data[idx] = f.mul(self.data[idx], inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = f.mul(factor, self.get(row, c));
                    let idx = r * self.cols + c;
                    self.data[idx] = f.sub(self.data[idx], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn inverse(&self) -> Result<Self, GaloisError> {
        if !self.is_square() {
            return Err(GaloisError::NotSquare(self.rows, self.cols));
        }
        let id = Self::identity(self.field, self.rows);
        self.solve(&id)
    }

    /// Solves `self · y = b` for square nonsingular `self`.
    pub fn solve(&self, b: &Self) -> Result<Self, GaloisError> {
        if !self.is_square() {
            return Err(GaloisError::NotSquare(self.rows, self.cols));
        }
        if b.rows != self.rows || b.field != self.field {
            return Err(GaloisError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (b.rows, b.cols),
            });
        }
        let n = self.rows;
        let width = n + b.cols;
        let mut aug = Self::zeros(self.field, n, width);
        for r in 0..n {
            aug.data[r * width..r * width + n].copy_from_slice(self.row(r));
            aug.data[r * width + n..(r + 1) * width].copy_from_slice(b.row(r));
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(GaloisError::Singular);
        }
        let cols: Vec<usize> = (n..width).collect();
        Ok(aug.select_columns(&cols))
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `a · b` over the field.
pub fn mat_mul(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix, GaloisError> {
    a.mul(b)
}

pub fn mat_rank(a: &FieldMatrix) -> usize {
    a.rank()
}

pub fn solve_linear(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix, GaloisError> {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf257() -> FieldSpec {
        FieldSpec::default_prime()
    }

    /// Schoolbook triple loop written against the element API.
    fn schoolbook(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
        let f = a.field();
        let mut out = FieldMatrix::zeros(f, a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = f.zero();
                for l in 0..a.cols() {
                    acc = acc + a.element(i, l) * b.element(l, j);
                }
                out.set(i, j, acc.value());
            }
        }
        out
    }

    fn random_nonsingular(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
        loop {
            let m = FieldMatrix::random(f, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[test]
    fn product_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = FieldMatrix::random(gf257(), 3, 3, &mut rng);
            let b = FieldMatrix::random(gf257(), 3, 3, &mut rng);
            assert_eq!(mat_mul(&a, &b).unwrap(), schoolbook(&a, &b));
        }
    }

    #[test]
    fn identity_product_and_dimension_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = FieldMatrix::random(gf257(), 8, 16, &mut rng);
        assert_eq!(FieldMatrix::identity(gf257(), 8).mul(&g).unwrap(), g);
        assert!(matches!(
            g.mul(&g),
            Err(GaloisError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FieldMatrix::zeros(gf257(), 4, 5).rank(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut m = FieldMatrix::random(gf257(), 5, 5, &mut rng);
        for c in 0..5 {
            let v = m.get(0, c);
            m.set(4, c, v);
        }
        assert!(m.rank() <= 4);
    }

    #[test]
    fn solve_identity_and_singular() {
        let f = gf257();
        let v = FieldMatrix::column_vector(f, &[1, 2, 3]).unwrap();
        assert_eq!(solve_linear(&FieldMatrix::identity(f, 3), &v).unwrap(), v);
        let singular = FieldMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        let b = FieldMatrix::column_vector(f, &[1, 1]).unwrap();
        assert_eq!(singular.solve(&b), Err(GaloisError::Singular));
    }

    #[test]
    fn solve_round_trip_in_binary_field() {
        let f = FieldSpec::binary(5, 0b100101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_nonsingular(f, 6, &mut rng);
        let y0 = FieldMatrix::random(f, 6, 2, &mut rng);
        let b = a.mul(&y0).unwrap();
        assert_eq!(a.solve(&b).unwrap(), y0);
        assert_eq!(
            a.mul(&a.inverse().unwrap()).unwrap(),
            FieldMatrix::identity(f, 6)
        );
    }

    proptest! {
        #[test]
        fn rank_of_product_is_bounded(seed in any::<u64>(), n in 1usize..6, m in 1usize..6, p in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = FieldSpec::prime(17).unwrap();
            let a = FieldMatrix::random(f, n, m, &mut rng);
            let b = FieldMatrix::random(f, m, p, &mut rng);
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn solve_round_trip(seed in any::<u64>(), n in 1usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_nonsingular(gf257(), n, &mut rng);
            let y0 = FieldMatrix::random(gf257(), n, 1, &mut rng);
            let b = a.mul(&y0).unwrap();
            let y = solve_linear(&a, &b).unwrap();
            prop_assert_eq!(a.mul(&y).unwrap(), b);
            prop_assert_eq!(y, y0);
        }
    }
}
