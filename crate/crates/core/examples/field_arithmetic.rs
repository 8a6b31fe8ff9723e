//! GF(2^n) arithmetic and multiplication matrices.
//!
//! `cargo run --example field_arithmetic -- 8`

use coverforge::gf2::{gf_inv, gf_mul, mul_matrix, FieldSpec};

fn main() -> coverforge::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(Ok(8), |s| s.parse()).expect("n");
    let field = FieldSpec::canonical(n)?;
    println!("GF(2^{n}) modulo 0x{:x}", field.modulus());

    let x = field.monomial(1);
    let a = field.element(0b1011 & field.mask())?;
    let prod = gf_mul(&x, &a)?;
    println!("x * {} = {}", a.to_hex(), prod.to_hex());

    if !a.is_zero() {
        let inv = gf_inv(&a)?;
        println!("{}^-1 = {}  (check: {})", a.to_hex(), inv.to_hex(), gf_mul(&a, &inv)?.to_hex());
    }

    // M_a acts on column vectors: M_a * b == a * b
    let m = mul_matrix(&a);
    let b = field.element(field.mask() >> 1)?;
    let via_matrix = m.mul_vec(&b.to_bitvector())?;
    assert_eq!(via_matrix, gf_mul(&a, &b)?.to_bitvector());
    println!("M_a * b = {}", via_matrix.to_hex());

    if n <= 4 {
        for i in 0..m.rows() {
            println!("  {}", m.row(i).to_bit_string());
        }
    }
    Ok(())
}
