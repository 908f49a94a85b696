// Brute-force references. Every vector is rebuilt from its coefficients.

pub struct NaiveReport {
    pub d: usize,
    pub words: std::collections::BTreeSet<SympVec>,
    pub pure: bool,
}

/// Every nonzero element of the centralizer, with a flag for membership in `S_p`.
pub fn naive_elements(code: &StabilizerCode) -> Vec<(SympVec, bool)> {
    let f = code.field();
    let p = f.modulus() as Residue;
    let basis = code.centralizer();
    let stab = code.stab_space();
    let m = basis.rows();
    let mut coeffs = vec![0 as Residue; m];
    let mut out = Vec::new();
    loop {
        let row = basis.combine(&coeffs);
        if row.iter().any(|&x| x != 0) {
            let in_stab = stab.contains(&row);
            out.push((SympVec::from_row(f, &row).unwrap(), in_stab));
        }
        let mut j = 0;
        while j < m && coeffs[j] == p - 1 {
            coeffs[j] = 0;
            j += 1;
        }
        if j == m {
            return out;
        }
        coeffs[j] += 1;
    }
}

fn naive_targets(code: &StabilizerCode) -> (Vec<SympVec>, Vec<SympVec>) {
    let (target, stab): (Vec<_>, Vec<_>) = naive_elements(code)
        .into_iter()
        .partition(|(_, s)| code.k() == 0 || !s);
    (
        target.into_iter().map(|e| e.0).collect(),
        stab.into_iter().map(|e| e.0).collect(),
    )
}

pub fn naive_min_weight(code: &StabilizerCode) -> NaiveReport {
    let (target, stab) = naive_targets(code);
    let d = target.iter().map(|v| v.weight()).min().unwrap();
    let words = target
        .into_iter()
        .filter(|v| v.weight() == d)
        .map(|v| v.canonical())
        .collect();
    let pure = stab.iter().all(|v| v.weight() >= d);
    NaiveReport { d, words, pure }
}

pub fn naive_distance(code: &StabilizerCode) -> usize {
    naive_min_weight(code).d
}

pub fn naive_words_up_to(code: &StabilizerCode, w: usize) -> Vec<SympVec> {
    let (target, _) = naive_targets(code);
    let set: std::collections::BTreeSet<SympVec> = target
        .into_iter()
        .filter(|v| v.weight() <= w)
        .map(|v| v.canonical())
        .collect();
    set.into_iter().collect()
}
