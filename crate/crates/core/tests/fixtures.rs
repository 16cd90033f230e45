mod common;

use torsor::homspace::LambdaRoute;

#[test]
fn cubic_form_signs() {
    assert!(common::plus_one_terms_match());
}

#[test]
fn listed_conditions_for_six_points() {
    let bad = common::condition_mismatches();
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn solved_factors_for_six_points() {
    let resc = common::symbolic_rescaling6();
    let bad = common::solution_mismatches(&resc);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
    let a = &resc.assignment;
    assert_eq!(a.leftovers().len(), 5);
    assert!(a.all_leftovers_vanish());
    for l in a.leftovers() {
        assert!(l.condition.ends_with(",1]"), "{}", l.condition);
    }
}

#[test]
fn printed_mu12_contradicts_its_condition() {
    let names: Vec<&str> = vec!["a", "b", "c", "d", "mu34", "mu35", "mu36", "mu45", "mu46", "mu56"];
    let all = torsor::algebra::vars(&names);
    let derived = common::mu12_from_listing(&all);
    assert!(common::same(&derived, &common::parse(common::SOLUTIONS[10].1, &all)));
    assert!(!common::same(&derived, &common::parse(common::PRINTED_MU12, &all)));
}

#[test]
fn parametrization_displays() {
    let bad = common::psi6_mismatches();
    assert!(bad.is_empty(), "{}", bad.join("\n"));
    assert!(common::psi7_lambda1_matches());
}

#[test]
fn parametrized_points_lie_on_the_cones() {
    assert_eq!(common::vanishes_on_cone(6, LambdaRoute::V11), 0);
    assert_eq!(common::vanishes_on_cone(7, LambdaRoute::V11), 0);
    assert_eq!(common::vanishes_on_cone(7, LambdaRoute::V21), 0);
}
