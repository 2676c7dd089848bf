use nalgebra::DMatrix;
use std::time::Instant;

fn main() {
    for &n in &[200usize, 600, 1000] {
        // random symmetric
        let mut m = DMatrix::<f64>::zeros(n, n);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) - 0.5
        };
        for i in 0..n {
            for j in 0..=i {
                let v = next();
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let t = Instant::now();
        let ev = m.clone().symmetric_eigenvalues();
        let dt = t.elapsed();
        println!("n={n}: symmetric_eigenvalues {:?} (first ev {:.3})", dt, ev[0]);
    }
}
