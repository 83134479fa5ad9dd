use kkw::oracle::{crosscheck_phi, CrosscheckOptions};
use kkw_core::engine::phi;
use kkw_core::Perturbation;

#[test]
fn six_dimensional_cases_agree() {
    let report = phi(6, 1, 3, Perturbation::None).unwrap();
    let opts = CrosscheckOptions { seeds: vec![7], directions: 1, ..Default::default() };
    let check = crosscheck_phi(&report, &opts).unwrap();
    for c in &check.cases {
        println!("{} exact {} numeric {:?} err {:e}", c.label, c.exact, c.numeric, c.relative_error);
    }
    println!("total {} {:?}", check.total.exact, check.total.numeric);
    assert!(check.pass());
}
