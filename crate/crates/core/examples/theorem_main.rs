//! a c^(Q^2+Q) over GF(Q^3), Q = 4^k: planar for (Q-1)-th powers that are not
//! 3(Q-1)-th powers, plus the identities used along the way.

use planar2::theorems::{
    verify_factorization_identities, verify_minpoly_structure, verify_no_de_all, verify_root_d, verify_theorem1,
};
use planar2::Result;

fn main() -> Result<()> {
    for k in [1, 2] {
        let r = verify_theorem1(k)?;
        println!("k = {k}: pass = {}, details = {:?}", r.pass, r.details);
    }
    for r in [
        verify_factorization_identities(4)?,
        verify_root_d(4)?,
        verify_minpoly_structure(4)?,
        verify_minpoly_structure(16)?,
        verify_no_de_all(1)?,
    ] {
        println!("{:<24} pass = {} cases = {}", r.name, r.pass, r.cases_checked);
    }
    Ok(())
}
