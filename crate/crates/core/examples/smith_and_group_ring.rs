//! Smith normal form over the integers and arithmetic in the group ring of Z_k.
//!
//! cargo run --example smith_and_group_ring

use lens_homology::exact::{smith_normal_form, IntMatrix, Matrix, Prime};
use lens_homology::group_ring::GroupRingElement;

fn main() -> lens_homology::Result<()> {
    let a = IntMatrix::from_i64(&Matrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?);
    let s = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("D =\n{}", s.d);
    println!("invariant factors {:?}, torsion {:?}", s.invariant_factors(), s.torsion());
    assert_eq!(s.u.matmul(&a)?.matmul(&s.v)?, s.d);

    let k = Prime::new(5)?;
    let t = GroupRingElement::monomial(1, k);
    let t_minus_one = &t + &GroupRingElement::new(vec![-1, 0, 0, 0, 0], k)?;
    let norm = GroupRingElement::new(vec![1; 5], k)?;
    println!("(T - 1) * N = {}", &t_minus_one * &norm);
    println!("augmentation of N: {}", norm.augmentation_integral());
    println!("multiplication by T - 1:\n{}", t_minus_one.as_multiplication_matrix());
    let integral = IntMatrix::from_i64(&t_minus_one.as_integral_matrix());
    println!("cokernel torsion of T - 1 over Z: {:?}", smith_normal_form(&integral).torsion());
    Ok(())
}
