use alcove_core::catalog::{preset, PRESET_NAMES};
use alcove_core::engine::Engine;
use alcove_core::tori::{dot_i_pairs, reduce_f, reduce_f_oracle};
use std::time::Instant;

fn main() {
    for name in PRESET_NAMES {
        let t0 = Instant::now();
        let e = Engine::new(preset(name).unwrap(), 4).unwrap();
        let t1 = Instant::now();
        let facets: Vec<usize> = (0..e.facets.len())
            .filter(|&f| e.w.len() <= 24 || e.facet(f).w_f.len() <= 2)
            .collect();
        let mut np = 0;
        for f in facets {
            let pairs = dot_i_pairs(&e, f, &e.theta_spans);
            np += pairs.len();
            let _ = reduce_f(&e, f, &e.theta_spans, &pairs);
            let _ = reduce_f_oracle(&e, f, &e.theta_spans, &pairs);
        }
        println!(
            "{name}: engine {:?} oracle {:?} pairs {np}",
            t1 - t0,
            t1.elapsed()
        );
    }
}
