use igusa_core::congruence::{basis_i_e_11, fiber_count, BasePoints};
use igusa_core::groebner::Budget;
use igusa_core::projective::ProjPoint;
use igusa_core::rational::rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let data = basis_i_e_11(&BasePoints::standard()).unwrap();
    let p = ProjPoint::new(vec![rat(0), rat(-8), rat(1), rat(24), rat(9)]);
    for s in 0..12u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        match fiber_count(&data, &p, &Budget::default(), &mut rng) {
            Ok(c) => println!("rng {s}: count {c}"),
            Err(e) => println!("rng {s}: error {e}"),
        }
    }
}
