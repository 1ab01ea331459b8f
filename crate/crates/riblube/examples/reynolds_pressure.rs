//! Closed-form Reynolds pressure and its weak-form residual.

use riblube::asympt::pressure_series;
use riblube::lubrication::{solve_pressure, weak_residual, weak_residual_samples};

fn main() {
    let theta = 0.3342793661519729;
    let field = solve_pressure(theta, 1.0).unwrap();
    println!("p(1/2) = {}, load = {}", field.eval(0.5), field.load);
    println!("weak residual (closed form, 101 nodes) = {:.3e}", weak_residual(&field, 100));

    // a perturbed pressure is flagged by the residual
    let bad: Vec<f64> = (0..=100)
        .map(|i| {
            let y = i as f64 / 100.0;
            field.eval(y) + 0.1 * (std::f64::consts::PI * y).sin()
        })
        .collect();
    println!(
        "weak residual (perturbed by 0.1 sin(pi y)) = {:.3e}",
        weak_residual_samples(&bad, field.theta, field.s)
    );

    // development split p0, p1 and the composed pressure
    let s = pressure_series(theta, 0.8, 1.1, 10.0, 0.05, 1.0).unwrap();
    println!(
        "p0(1/2) = {}, p1(1/2) = {}, composed = {}",
        s.p0.eval(0.5),
        s.p1.eval(0.5),
        s.eval(0.5)
    );
}
