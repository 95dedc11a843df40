// temporary diagnostic
use lp_lab::numerics::*;

fn main() {
    // Projection of x onto {a.z = b, z >= 0} with a 1x3, compare against a
    // fine mesh over the triangle with vertices (b/a_i) e_i when a_i > 0 --
    // here a has mixed signs; parametrize z = q + N t and scan t grid.
    let a = DenseMatrix::from_rows(&[vec![
        -0.0033170213095385925, -0.44133515964099557, 0.2600245168335391,
    ]]).unwrap();
    let x0 = vec![0.3, 0.3, 0.3];
    let b = a.matvec(&x0);
    println!("b = {:?}", b);
    let x = vec![-0.2808682249366852, -1.9199717347880316, -1.5873622318679512];
    let p = PolyhedronProjector::new(&a, &b).unwrap();
    let (z, d) = p.project(&x).unwrap();
    println!("z = {z:?} d = {d}");

    // brute force over z1, z2 grid, z3 from the constraint
    let mut best = (f64::INFINITY, vec![]);
    let n3 = |z1: f64, z2: f64| (b[0] + 0.0033170213095385925*z1 + 0.44133515964099557*z2) / 0.2600245168335391;
    for i in 0..2000 {
        for j in 0..2000 {
            let z1 = i as f64 * 0.002;
            let z2 = j as f64 * 0.002;
            let z3 = n3(z1, z2);
            if z3 < 0.0 { continue; }
            let dd = ((z1-x[0]).powi(2) + (z2-x[1]).powi(2) + (z3-x[2]).powi(2)).sqrt();
            if dd < best.0 { best = (dd, vec![z1, z2, z3]); }
        }
    }
    println!("mesh best d = {} at {:?}", best.0, best.1);
}
