//! Small hand-checkable instances shared by tests, examples and the CLI.

use crate::instance::{TimeWindows, TtpInstance, TtptwInstance};
use crate::scalar::Scalar;

/// Four cities on the corners of a 3x4 rectangle, one item in each non-depot
/// city, capacity 8, speeds 0.1..1, rent 1.
pub const DESK5: &str = "PROBLEM NAME: \tdesk5\n\
KNAPSACK DATA TYPE: \tbounded strongly corr\n\
DIMENSION:\t4\n\
NUMBER OF ITEMS: \t3\n\
CAPACITY OF KNAPSACK: \t8\n\
MIN SPEED: \t0.1\n\
MAX SPEED: \t1\n\
RENTING RATIO: \t1\n\
EDGE_WEIGHT_TYPE:\tCEIL_2D\n\
NODE_COORD_SECTION\t(INDEX, X, Y): \n\
1\t0\t0\n\
2\t0\t4\n\
3\t3\t4\n\
4\t3\t0\n\
ITEMS SECTION\t(INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER): \n\
1\t10\t3\t2\n\
2\t8\t5\t3\n\
3\t6\t2\t4\n";

pub fn desk5_generic<S: Scalar>() -> TtpInstance<S> {
    TtpInstance::parse(DESK5).expect("fixture parses")
}

pub fn desk5() -> TtpInstance<f64> {
    desk5_generic()
}

/// DESK-5 with every window open.
pub fn desk5_open() -> TtptwInstance<f64> {
    TtptwInstance::open(desk5())
}

pub fn desk5_open_f32() -> TtptwInstance<f32> {
    let ttp = desk5_generic::<f32>();
    let n = ttp.num_cities();
    TtptwInstance { ttp, windows: TimeWindows::open(n), alias: "desk5".into() }
}
