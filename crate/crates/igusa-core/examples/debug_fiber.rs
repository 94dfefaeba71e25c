use igusa_core::congruence::{basis_i_e_11, fiber_count, BasePoints};
use igusa_core::groebner::Budget;
use igusa_core::rational::rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let data = basis_i_e_11(&BasePoints::standard()).unwrap();
    let hyperplanes = data.exceptional_hyperplanes().unwrap();
    // replicate the per-check rng of congruence.fiber_degree at seed 10
    let id = "congruence.fiber_degree";
    let mut h: u64 = 0xcbf29ce484222325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10u64 ^ h);
    let mut counted = 0;
    while counted < 20 {
        let x: Vec<_> = (0..3).map(|_| rat(rng.gen_range(-6..=6i64))).collect();
        let y: Vec<_> = (0..3).map(|_| rat(rng.gen_range(-6..=6i64))).collect();
        if x.iter().all(|c| num_traits::Zero::is_zero(c))
            || y.iter().all(|c| num_traits::Zero::is_zero(c))
            || data.m_x_at(&x).rank() != 3
            || data.n_y_at(&y).rank() != 3
        {
            continue;
        }
        let Ok(p) = data.t_e_eval(&x, &y) else { continue };
        if hyperplanes.iter().any(|hp| {
            hp.iter()
                .zip(&p.coords)
                .fold(rat(0), |acc, (a, b)| acc + a * b)
                == rat(0)
        }) {
            continue;
        }
        let c = fiber_count(&data, &p, &Budget::default(), &mut rng).unwrap();
        if c != 2 {
            println!("fiber {counted}: count {c}");
            println!("x = {:?}", x.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            println!("y = {:?}", y.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            println!("p = {:?}", p.coords.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            for f in &data.forms {
                println!("form: {f}");
            }
            return;
        }
        counted += 1;
    }
    println!("all 20 fibers counted 2");
}
