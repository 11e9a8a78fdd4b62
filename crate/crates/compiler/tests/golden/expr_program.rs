#![allow(unused)]

use chplx_rt::prelude::*;

pub fn run(rt: &Runtime, cfg: &Config) {
#line 1 "expr.chpl"
    let mut a: i64 = 1 + 1;
#line 2 "expr.chpl"
    a = a + 1;
}
