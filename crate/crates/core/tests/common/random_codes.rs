// Shared by unit tests (via include!) and integration tests.

/// Random `[[n, k]]_p` stabilizer code: rows are drawn one at a time from the
/// symplectic dual of the rows chosen so far.
pub fn random_code<R: Rng>(field: PrimeField, n: usize, k: usize, rng: &mut R) -> StabilizerCode {
    assert!(k <= n && n >= 1);
    let p = field.modulus() as Residue;
    let mut stab = FpMatrix::empty(field, 2 * n);
    while stab.rows() < n - k {
        let dual = symplectic_dual(&stab);
        let coeffs: Vec<Residue> = (0..dual.rows()).map(|_| rng.gen_range(0..p)).collect();
        let v = dual.combine(&coeffs);
        if !stab.in_row_space(&v) {
            stab.push_row(&v);
        }
    }
    StabilizerCode::from_stabilizer_matrix(stab).expect("isotropic independent rows")
}

/// Random code with `1 <= n <= max_n` and random `k`.
pub fn random_small_code<R: Rng>(field: PrimeField, min_n: usize, max_n: usize, rng: &mut R) -> StabilizerCode {
    let n = rng.gen_range(min_n..=max_n);
    let k = rng.gen_range(0..=n);
    random_code(field, n, k, rng)
}
