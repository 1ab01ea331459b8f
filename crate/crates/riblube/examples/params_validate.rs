//! Parameter intake: config text, validation report, derived scalars.

use riblube::params::{derive, parse_config, validate};

fn main() {
    let text = "\
# squeeze-film desk case
N = 0.3
Rc = 0.1
nu_b_bar = 0.1
delta_slip = 1
h = 1
";
    let p = parse_config(text).expect("config parses");
    println!("params: {p:?}");
    let report = validate(&p);
    println!("valid: {} violations: {:?} flags: {:?}", report.is_valid(), report.violations, report.flags);
    let d = derive(&p);
    println!("k        = {}", d.k);
    println!("gamma_a  = {:?}", d.gamma_alpha);
    println!("C_alpha  = {:?}", d.c_alpha);
    println!("C_N      = {}", d.c_n);
    println!("nu_b_bar = {}", d.nu_b_bar);
    println!("delta    = {:?}", d.delta_slip);
    println!("gamma    = {}", d.gamma);
}
