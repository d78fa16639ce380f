//! Exponential integral E₁(x) = Γ(0, x) for x > 0.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 needs x > 0, got {x}");
    if x <= 1.0 {
        // −γ − ln x − Σ (−x)^k / (k·k!)
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let t = term / k as f64;
            sum += t;
            if t.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        -EULER_GAMMA - x.ln() - sum
    } else if x > 700.0 {
        0.0
    } else {
        // modified Lentz on e^{-x}/(x+1-1/(x+3-4/(x+5-...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..300 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}
