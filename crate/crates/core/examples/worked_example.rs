// The obstruction of a hand-written signature under hand-picked weights.

use theory_shift::obstruction::{obstruction_score, ObstructionSignature, ObstructionWeights};

pub fn run_example() -> anyhow::Result<f64> {
    let sig = ObstructionSignature {
        r_s: 0.1,
        r_o: 0.1,
        r_t: 0.2,
        r_v: 0.5,
        g_glue: 0.1,
        c_viol: 0.0,
        p_limit: 0.0,
        cost: 1.6,
        psi: Vec::new(),
    };
    let w = ObstructionWeights {
        w_s: 1.0,
        w_o: 1.0,
        w_t: 1.5,
        w_g: 1.5,
        w_c: 2.0,
        w_l: 1.5,
        lambda: 0.25,
    };
    w.validate()?;
    Ok(obstruction_score(&sig, &w))
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    // 0.1 + 0.1 + 1.5*0.2 + 1.5*0.1 + 0.25*1.6; r_v does not enter.
    println!("Obs = {}", run_example()?);
    Ok(())
}
