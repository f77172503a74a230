//! General heredity tensors: validation, the JSON file format, application,
//! and Volterra-type classification.
//!
//! ```bash
//! cargo run --example tensor_file -p qso-dynamics
//! ```

use qso_dynamics::tensor::validate_tensor;
use qso_dynamics::{
    apply_tensor, classify_operator, make_params, to_tensor, QsoTensor, SimplexPoint,
};

#[allow(clippy::needless_range_loop)]
fn main() {
    // the family written as a tensor is quasi-strictly non-Volterra as soon
    // as e > 0
    let p = make_params(0.3, 0.7, Some(0.2), Some(0.5), None).unwrap();
    let tensor = to_tensor(&p);
    println!("family tensor (e = {}): {:?}", p.e(), classify_operator(&tensor));

    let json = tensor.to_json_string();
    println!("file form: {}...", &json[..60]);
    let back = QsoTensor::from_json_str(&json).unwrap();
    assert_eq!(tensor, back);

    let x = SimplexPoint::new(0.2, 0.3, 0.5).unwrap();
    println!("V{x} = {}", apply_tensor(&tensor, &x));

    // a parent-copying tensor is Volterra
    let mut raw = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                raw[i][j][i] = 1.0;
            } else {
                raw[i][j][i] = 0.5;
                raw[i][j][j] = 0.5;
            }
        }
    }
    let volterra = validate_tensor(&raw).unwrap();
    println!("parent-copy tensor: {:?}", classify_operator(&volterra));

    // validation pinpoints the offending entry
    raw[0][0][0] = 1.1;
    match validate_tensor(&raw) {
        Err(e) => println!("broken tensor rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
