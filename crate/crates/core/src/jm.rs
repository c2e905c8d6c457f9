//! The two Jucys-Murphy families of the nil-blob algebra and the central
//! square-zero element built from them.

use crate::algebra::{AlgebraElement, AlgebraError, Engine};
use crate::scalar::int;

/// `L_1 = U_0` and `L_{i+1} = U_i L_i + L_i U_i + 2 U_i (L_1 + .. + L_{i-1})`.
///
/// The correction term equals `U_i L_i U_i`, so the family coincides
/// with the telescoping differences `Y_i - Y_{i-1}` of the conjugation
/// family; with a `-2` coefficient instead the elements would fail to
/// commute (already `[L_2, L_3] = 4 (U0 U2 U1 U0 - U0 U1 U0 U2)` on
/// three points).
pub fn l_elements(n: usize, eng: &mut Engine) -> Result<Vec<AlgebraElement>, AlgebraError> {
    assert_eq!(eng.n(), n);
    let mut ls: Vec<AlgebraElement> = vec![AlgebraElement::generator(n, 0)];
    for i in 1..n {
        let u = AlgebraElement::generator(n, i);
        let prev = &ls[i - 1];
        let mut sum_lower = AlgebraElement::zero(n);
        for l in &ls[..i - 1] {
            sum_lower = sum_lower.add(l);
        }
        let next = eng
            .mul_nilblob(&u, prev)?
            .add(&eng.mul_nilblob(prev, &u)?)
            .add(&eng.mul_nilblob(&u, &sum_lower)?.scale(&int(2)));
        ls.push(next);
    }
    Ok(ls)
}

/// `Y_1 = U_0` and `Y_{i+1} = (U_i + 1) Y_i (U_i + 1)`.
pub fn y_elements(n: usize, eng: &mut Engine) -> Result<Vec<AlgebraElement>, AlgebraError> {
    assert_eq!(eng.n(), n);
    let mut ys: Vec<AlgebraElement> = vec![AlgebraElement::generator(n, 0)];
    for i in 1..n {
        let s = AlgebraElement::generator(n, i).add_scalar(&int(1));
        let left = eng.mul_nilblob(&s, &ys[i - 1])?;
        ys.push(eng.mul_nilblob(&left, &s)?);
    }
    Ok(ys)
}

/// `J = L_1 + ... + L_n`, the internal square-zero element. It commutes
/// with `U_i` exactly when the window `L_i + L_(i+1) + L_(i+2)` fits,
/// i.e. for `i <= n - 2`; full centrality is a statement about the
/// endomorphism algebra one level up, which the formal extension models
/// instead.
pub fn j_element(n: usize, eng: &mut Engine) -> Result<AlgebraElement, AlgebraError> {
    let ls = l_elements(n, eng)?;
    let mut sum = AlgebraElement::zero(n);
    for l in &ls {
        sum = sum.add(l);
    }
    Ok(sum)
}
