//! Fixed inputs shared by the benchmarks.

use morsekit::cones::cone_constraints;
use morsekit::{extract, Covector, SupportSet};

pub fn mixed_sign() -> (SupportSet, Covector) {
    let a = SupportSet::new(&[-3, -1, 1, 2, 4]).unwrap();
    let g = Covector::from_ints(&a, &[3, 5, 2, 5, 1]).unwrap();
    (a, g)
}

pub fn interval(n: i64) -> SupportSet {
    SupportSet::new(&(1..=n).collect::<Vec<_>>()).unwrap()
}

/// The cone system of the worked mixed-sign covector, as integer rows.
pub fn cone_rows() -> (Vec<Vec<i64>>, usize) {
    let (a, g) = mixed_sign();
    let t = extract(&a, &g).unwrap();
    let sys = cone_constraints(&a, &t);
    (sys.forms, sys.n)
}
