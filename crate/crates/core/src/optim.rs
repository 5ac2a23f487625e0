//! Derivative-free simplex minimization (Nelder-Mead with the standard
//! reflection/expansion/contraction/shrink coefficients).

pub(crate) struct NmResult {
    pub x: Vec<f64>,
    #[allow(dead_code)] // read by unit tests; callers re-evaluate without the penalty term
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    tolerance: f64,
    max_iterations: usize,
) -> NmResult {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let fx0 = f(x0);
    simplex.push((x0.to_vec(), fx0));
    for i in 0..n {
        let mut xi = x0.to_vec();
        xi[i] += step;
        let fi = f(&xi);
        simplex.push((xi, fi));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        iterations += 1;
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        if spread.abs() < tolerance && size < tolerance.sqrt() {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v;
            }
        }
        for c in &mut centroid {
            *c /= n as f64;
        }

        let worst = simplex[n].clone();
        let reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| 2.0 * c - w)
            .collect();
        let fr = f(&reflected);

        if fr < simplex[0].1 {
            let expanded: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| 3.0 * c - 2.0 * w)
                .collect();
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (point, fp) = if fr < worst.1 {
                let oc: Vec<f64> = centroid
                    .iter()
                    .zip(&reflected)
                    .map(|(c, r)| 0.5 * (c + r))
                    .collect();
                let v = f(&oc);
                (oc, v)
            } else {
                let ic: Vec<f64> = centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| 0.5 * (c + w))
                    .collect();
                let v = f(&ic);
                (ic, v)
            };
            if fp < worst.1.min(fr) {
                simplex[n] = (point, fp);
            } else {
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    for (xi, bi) in p.0.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    p.1 = f(&p.0);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let (x, fx) = simplex.swap_remove(0);
    NmResult {
        x,
        fx,
        iterations,
        converged,
    }
}
