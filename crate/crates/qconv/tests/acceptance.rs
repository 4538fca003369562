//! Acceptance gate: one test per delivery criterion. Each test prints a
//! single pass/fail line through the harness and stays inside its stated
//! wall-clock budget. Reference values are frozen from independent
//! calculations; oracles here re-derive everything they check from first
//! principles rather than reusing the code paths under test.

use std::path::Path;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qconv::channel::{depolarizing, extract_syndromes, sample_error, ChannelModel, SyndromeStream};
use qconv::circuit::{build_encoder, verify_encoder, Circuit, Gate, Tableau};
use qconv::cli::run_trials;
use qconv::code::{parse_code, CodeSpec};
use qconv::decoder::{brute_force_ml, survivor_logliks, viterbi_decode, DecodeOptions};
use qconv::gf2poly::Poly;
use qconv::pauli::{Pauli, PauliPoly, PauliString, SymplecticVec};
use qconv::structure::{derive_logicals, is_catastrophic, standard_form, LogicalOps};

fn shipped_code(name: &str) -> CodeSpec {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name);
    let text = std::fs::read_to_string(&path).expect("example file readable");
    parse_code(&text).expect("example file parses")
}

fn within_budget(started: Instant, budget: Duration, what: &str) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{} took {:.1} s, budget {:.0} s",
        what,
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
}

fn poly_grid(rows: &[PauliPoly], n: usize) -> Vec<(Vec<String>, Vec<String>)> {
    rows.iter()
        .map(|g| {
            (
                (0..n).map(|j| g.x(j).to_string()).collect(),
                (0..n).map(|j| g.z(j).to_string()).collect(),
            )
        })
        .collect()
}

#[test]
fn criterion_1_worked_example_matches_frozen_tables() {
    let started = Instant::now();
    let c = shipped_code("qcc5.code");

    // Generator matrix in polynomial form, exactly as frozen.
    let grid = poly_grid(c.gens(), c.n());
    let expected: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec!["0", "1", "1", "0", "0"], vec!["1", "0", "0", "1", "0"]),
        (vec!["0", "0", "1", "1", "0"], vec!["0", "1", "0", "0", "1"]),
        (vec!["0", "0", "0", "1", "1"], vec!["D", "0", "1", "0", "0"]),
        (vec!["D", "0", "0", "0", "1"], vec!["0", "D", "0", "1", "0"]),
    ];
    for (i, (x, z)) in expected.iter().enumerate() {
        assert_eq!(grid[i].0, *x, "generator {} x half", i + 1);
        assert_eq!(grid[i].1, *z, "generator {} z half", i + 1);
    }

    // Standard form: no column swaps needed, full rank split, frozen entries.
    let sf = standard_form(&c).unwrap();
    assert_eq!(sf.r(), 4);
    assert!(sf.diagonal_ok());
    assert_eq!(sf.col_perm(), &[0, 1, 2, 3, 4]);
    assert!(sf.row_negative().iter().all(|&neg| !neg));
    let std_expected: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec!["D", "0", "0", "0", "1"], vec!["0", "D", "0", "1", "0"]),
        (
            vec!["0", "1", "0", "0", "1"],
            vec!["1+D", "1", "1", "1", "1"],
        ),
        (vec!["0", "0", "1", "0", "1"], vec!["D", "1", "1", "0", "1"]),
        (vec!["0", "0", "0", "1", "1"], vec!["D", "0", "1", "0", "0"]),
    ];
    for (i, (x, z)) in std_expected.iter().enumerate() {
        for j in 0..5 {
            assert_eq!(
                sf.x_mat().at(i, j).to_string(),
                x[j],
                "std row {} x col {}",
                i + 1,
                j + 1
            );
            assert_eq!(
                sf.z_mat().at(i, j).to_string(),
                z[j],
                "std row {} z col {}",
                i + 1,
                j + 1
            );
        }
    }

    // Logical operators, conditioning polynomial, commitment delay.
    let lo = derive_logicals(&sf).unwrap();
    assert_eq!(lo.xbar().len(), 1);
    let xbar = &lo.xbar()[0];
    let xbar_x: Vec<String> = (0..5).map(|j| xbar.x(j).to_string()).collect();
    let xbar_z: Vec<String> = (0..5).map(|j| xbar.z(j).to_string()).collect();
    assert_eq!(xbar_x, ["0", "0", "0", "0", "1"]);
    assert_eq!(xbar_z, ["0", "1", "1", "0", "0"]);
    let zbar_rows = lo.zbar().expect("non-catastrophic code has phase logicals");
    assert_eq!(zbar_rows.len(), 1);
    let zbar = &zbar_rows[0];
    let zbar_x: Vec<String> = (0..5).map(|j| zbar.x(j).to_string()).collect();
    let zbar_z: Vec<String> = (0..5).map(|j| zbar.z(j).to_string()).collect();
    assert_eq!(zbar_x, ["0", "0", "0", "0", "0"]);
    assert_eq!(zbar_z, ["D", "1", "1", "1", "1"]);
    assert_eq!(lo.conditioning().to_string(), "1");
    assert_eq!(lo.lambda(), 1);

    // Functional certificate, independent of the exact row choice: logicals
    // commute with every generator at every shift, and pair with each other.
    for g in c.gens() {
        assert!(
            xbar.gen_commute(g).unwrap(),
            "xbar commutes with the stabilizer"
        );
        assert!(
            zbar.gen_commute(g).unwrap(),
            "zbar commutes with the stabilizer"
        );
    }
    assert!(
        !xbar.gen_commute(zbar).unwrap(),
        "xbar and zbar must anticommute somewhere"
    );

    within_budget(started, Duration::from_secs(1), "worked example check");
}

#[test]
fn criterion_2_catastrophicity_verdicts() {
    let started = Instant::now();

    let good = shipped_code("qcc5.code");
    assert!(!is_catastrophic(&good).unwrap());
    let lo = derive_logicals(&standard_form(&good).unwrap()).unwrap();
    assert!(lo.zbar().is_some());
    assert_eq!(lo.conditioning().to_string(), "1");

    let bad = shipped_code("catastrophic.code");
    assert!(is_catastrophic(&bad).unwrap());
    let lo = derive_logicals(&standard_form(&bad).unwrap()).unwrap();
    assert!(lo.zbar().is_none(), "no finite phase logicals exist");
    assert_eq!(lo.conditioning().to_string(), "1+D");

    within_budget(started, Duration::from_secs(1), "catastrophicity check");
}

#[test]
fn criterion_3_encoders_verify_and_gate_counts_grow_affinely() {
    let started = Instant::now();
    let c = shipped_code("qcc5.code");
    let sf = standard_form(&c).unwrap();
    let lo = derive_logicals(&sf).unwrap();

    for q in 1..=3 {
        for simplify in [false, true] {
            let circ = build_encoder(&c, &sf, &lo, q, simplify).unwrap();
            let report = verify_encoder(&circ, &c, &lo, q).unwrap();
            assert!(
                report.is_ok(),
                "q = {}, simplify = {}: {:?}",
                q,
                simplify,
                report.problems()
            );
        }
    }

    for simplify in [false, true] {
        let counts: Vec<usize> = (2..=8)
            .map(|q| {
                build_encoder(&c, &sf, &lo, q, simplify)
                    .unwrap()
                    .gate_count()
            })
            .collect();
        let diffs: Vec<isize> = counts
            .windows(2)
            .map(|w| w[1] as isize - w[0] as isize)
            .collect();
        assert!(
            diffs.windows(2).all(|w| w[0] == w[1]),
            "simplify = {}: gate counts {:?} are not affine in q",
            simplify,
            counts
        );
        assert!(diffs[0] > 0, "adding a block must add gates");
    }

    within_budget(
        started,
        Duration::from_secs(5),
        "encoder verification sweep",
    );
}

#[test]
fn criterion_4_trellis_and_exhaustive_likelihoods_agree() {
    let started = Instant::now();
    let c = shipped_code("qcc5.code");
    let ch = depolarizing(0.1).unwrap();
    let q = 2;
    let n_qubits = c.n() * q + c.m();
    let opts = DecodeOptions::default();

    for trial in 0..200u64 {
        let error = sample_error(&ch, n_qubits, 1000 + trial);
        let stream = extract_syndromes(&c, &error, q).unwrap();
        let fast = viterbi_decode(&c, &ch, &stream, &opts).unwrap();
        let slow = brute_force_ml(&c, &ch, &stream, q).unwrap();
        assert!(
            (fast.loglik - slow.loglik).abs() <= 1e-9,
            "trial {}: trellis {} vs exhaustive {}",
            trial,
            fast.loglik,
            slow.loglik
        );
        assert_eq!(
            fast.estimate, slow.estimate,
            "trial {}: estimates differ",
            trial
        );
    }

    within_budget(started, Duration::from_secs(120), "trellis cross-check");
}

/// Digit used by the trellis state labels: I = 0, X = 1, Z = 2, Y = 3.
fn overlap_digit(p: Pauli) -> usize {
    (p.x_bit() as usize) | ((p.z_bit() as usize) << 1)
}

fn letter_of(d: u32) -> Pauli {
    Pauli::from_xz(d & 1 == 1, d & 2 == 2)
}

fn counts_of(letters: &[Pauli]) -> [u64; 4] {
    let mut counts = [0u64; 4];
    for &p in letters {
        let idx = match p {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        };
        counts[idx] += 1;
    }
    counts
}

#[test]
fn criterion_5_survivors_dominate_every_candidate() {
    let started = Instant::now();
    let c = shipped_code("qcc5.code");
    let ch = depolarizing(0.1).unwrap();
    let (n, m) = (c.n(), c.m());
    let window = n + m;
    let states = 1usize << (2 * m);
    let exp = c.expand_stabilizer(2).unwrap();
    let full = exp.n_qubits;

    // Head table: every error pattern on the first block window (block 0
    // plus the trailing overlap). Records its block-0 checks, its letter
    // counts, and which overlap pattern it leaves behind.
    let head_total = 1usize << (2 * window);
    let mut head_syn = vec![0u8; head_total];
    let mut head_counts = vec![[0u64; 4]; head_total];
    let mut head_state = vec![0usize; head_total];
    for w in 0..head_total {
        let letters: Vec<Pauli> = (0..window)
            .map(|p| letter_of(((w >> (2 * (window - 1 - p))) & 3) as u32))
            .collect();
        let mut vec = SymplecticVec::zero(full);
        for (p, &letter) in letters.iter().enumerate() {
            vec.set_letter(p, letter);
        }
        let mut syn = 0u8;
        for (i, row) in exp.rows[..c.gen_count()].iter().enumerate() {
            if row.symplectic_dot(&vec) {
                syn |= 1 << i;
            }
        }
        head_syn[w] = syn;
        head_counts[w] = counts_of(&letters);
        head_state[w] = letters[n..]
            .iter()
            .fold(0, |acc, &p| acc * 4 + overlap_digit(p));
    }

    // Extension table: block-1 checks depend on the inherited overlap and
    // on the fresh block; counts and the next overlap depend on the fresh
    // block alone.
    let ext_total = 1usize << (2 * n);
    let mut ext_syn = vec![[0u8; 1 << 10]; states];
    let mut ext_counts = vec![[0u64; 4]; ext_total];
    let mut ext_state = vec![0usize; ext_total];
    for t in 0..ext_total {
        let letters: Vec<Pauli> = (0..n)
            .map(|p| letter_of(((t >> (2 * (n - 1 - p))) & 3) as u32))
            .collect();
        ext_counts[t] = counts_of(&letters);
        ext_state[t] = letters[n - m..]
            .iter()
            .fold(0, |acc, &p| acc * 4 + overlap_digit(p));
        for o in 0..states {
            let mut vec = SymplecticVec::zero(full);
            vec.set_letter(n, letter_of(((o >> 2) & 3) as u32));
            vec.set_letter(n + 1, letter_of((o & 3) as u32));
            for (p, &letter) in letters.iter().enumerate() {
                vec.set_letter(window + p, letter);
            }
            let mut syn = 0u8;
            for (i, row) in exp.rows[c.gen_count()..].iter().enumerate() {
                if row.symplectic_dot(&vec) {
                    syn |= 1 << i;
                }
            }
            ext_syn[o][t] = syn;
        }
    }

    // Single-block certificate: for each of the 16 possible check patterns,
    // the surviving log-likelihood per overlap state equals the best over
    // the full enumeration, and a missing survivor means no candidate.
    let mut best1 = vec![vec![f64::NEG_INFINITY; states]; 16];
    let mut seen1 = vec![vec![false; states]; 16];
    for w in 0..head_total {
        let ll = ch.log_likelihood_of_counts(head_counts[w]);
        let slot = &mut best1[head_syn[w] as usize][head_state[w]];
        *slot = slot.max(ll);
        seen1[head_syn[w] as usize][head_state[w]] = true;
    }
    for bits in 0..16u8 {
        let anti: Vec<bool> = (0..c.gen_count()).map(|i| bits >> i & 1 == 1).collect();
        let stream = SyndromeStream::new(1, c.gen_count(), anti);
        let survivors = survivor_logliks(&c, &ch, &stream).unwrap();
        assert_eq!(survivors.len(), 1);
        for state in 0..states {
            match survivors[0][state] {
                Some(ll) => {
                    assert!(
                        seen1[bits as usize][state],
                        "survivor without any candidate"
                    );
                    let oracle = best1[bits as usize][state];
                    assert!(
                        ll >= oracle - 1e-12 && (ll - oracle).abs() <= 1e-9,
                        "bits {:04b} state {}: survivor {} vs oracle max {}",
                        bits,
                        state,
                        ll,
                        oracle
                    );
                }
                None => assert!(
                    !seen1[bits as usize][state],
                    "bits {:04b} state {}: candidates exist but no survivor",
                    bits, state
                ),
            }
        }
    }

    // Two-block certificate: one pass over all 4^12 errors feeds the best
    // log-likelihood per (stream, final overlap) table for all 256 streams.
    let mut best2 = vec![vec![f64::NEG_INFINITY; states]; 256];
    let mut seen2 = vec![vec![false; states]; 256];
    for w in 0..head_total {
        let base = head_counts[w];
        let syn0 = head_syn[w] as usize;
        let o = head_state[w];
        for t in 0..ext_total {
            let mut counts = base;
            for (idx, &c) in ext_counts[t].iter().enumerate() {
                counts[idx] += c;
            }
            let ll = ch.log_likelihood_of_counts(counts);
            let key = syn0 << 4 | ext_syn[o][t] as usize;
            let state = ext_state[t];
            if ll > best2[key][state] {
                best2[key][state] = ll;
            }
            seen2[key][state] = true;
        }
    }
    for key in 0..256usize {
        let (bits0, bits1) = ((key >> 4) as u8, (key & 15) as u8);
        let mut anti: Vec<bool> = (0..c.gen_count()).map(|i| bits0 >> i & 1 == 1).collect();
        anti.extend((0..c.gen_count()).map(|i| bits1 >> i & 1 == 1));
        let stream = SyndromeStream::new(2, c.gen_count(), anti);
        let survivors = survivor_logliks(&c, &ch, &stream).unwrap();
        assert_eq!(survivors.len(), 2);
        for state in 0..states {
            match survivors[1][state] {
                Some(ll) => {
                    assert!(seen2[key][state], "survivor without any candidate");
                    let oracle = best2[key][state];
                    assert!(
                        ll >= oracle - 1e-12 && (ll - oracle).abs() <= 1e-9,
                        "stream {:08b} state {}: survivor {} vs oracle max {}",
                        key,
                        state,
                        ll,
                        oracle
                    );
                }
                None => assert!(
                    !seen2[key][state],
                    "stream {:08b} state {}: candidates exist but no survivor",
                    key, state
                ),
            }
        }
    }

    within_budget(
        started,
        Duration::from_secs(300),
        "maximum-likelihood certificate",
    );
}

#[test]
fn criterion_6_truncated_traceback_agreement_rate() {
    let started = Instant::now();
    let c = shipped_code("qcc5.code");
    let sf = standard_form(&c).unwrap();
    let lo = derive_logicals(&sf).unwrap();
    let ch = depolarizing(0.05).unwrap();
    let trials = 10_000u64;

    let records = run_trials(&c, &lo, &ch, 20, 2024, 0..trials, Some(2), false).unwrap();
    let agreed = records
        .iter()
        .filter(|r| r.traceback_agreement == Some(true))
        .count();
    let rate = agreed as f64 / trials as f64;
    println!(
        "truncated traceback agreement rate: {} ({}/{})",
        rate, agreed, trials
    );
    assert!(
        rate >= 0.95,
        "agreement rate {} ({} of {} trials) fell below 0.95",
        rate,
        agreed,
        trials
    );

    within_budget(
        started,
        Duration::from_secs(600),
        "truncation agreement sweep",
    );
}

type Mat = Vec<Vec<Complex64>>;

fn mat_identity(dim: usize) -> Mat {
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (d, row) in m.iter_mut().enumerate() {
        row[d] = Complex64::new(1.0, 0.0);
    }
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let dim = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for r in 0..dim {
        for k in 0..dim {
            let v = a[r][k];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            for c in 0..dim {
                out[r][c] += v * b[k][c];
            }
        }
    }
    out
}

fn mat_dagger(a: &Mat) -> Mat {
    let dim = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for r in 0..dim {
        for c in 0..dim {
            out[c][r] = a[r][c].conj();
        }
    }
    out
}

fn bit(v: usize, q: usize) -> usize {
    (v >> q) & 1
}

/// Dense matrix of a signed Pauli product over `nq` qubits, basis index
/// bit q holding qubit q's computational value.
fn dense_pauli(v: &SymplecticVec, negative: bool, nq: usize) -> Mat {
    let dim = 1 << nq;
    let i = Complex64::new(0.0, 1.0);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let mut out = col;
        let mut amp = Complex64::new(if negative { -1.0 } else { 1.0 }, 0.0);
        for q in 0..nq {
            match v.letter_at(q) {
                Pauli::I => {}
                Pauli::X => out ^= 1 << q,
                Pauli::Z => {
                    if bit(col, q) == 1 {
                        amp = -amp;
                    }
                }
                Pauli::Y => {
                    amp *= if bit(col, q) == 0 { i } else { -i };
                    out ^= 1 << q;
                }
            }
        }
        m[out][col] = amp;
    }
    m
}

fn dense_gate(g: &Gate, nq: usize) -> Mat {
    let dim = 1 << nq;
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    match *g {
        Gate::H(q) => {
            for col in 0..dim {
                let sign = if bit(col, q) == 1 { -h } else { h };
                m[col & !(1 << q)][col] += h;
                m[col | (1 << q)][col] += sign;
            }
        }
        Gate::S(q) => {
            for col in 0..dim {
                m[col][col] = if bit(col, q) == 1 { i } else { one };
            }
        }
        Gate::X(q) => {
            for col in 0..dim {
                m[col ^ (1 << q)][col] = one;
            }
        }
        Gate::Z(q) => {
            for col in 0..dim {
                m[col][col] = if bit(col, q) == 1 { -one } else { one };
            }
        }
        Gate::Cp {
            control,
            target,
            letter,
        } => {
            for col in 0..dim {
                if bit(col, control) == 0 {
                    m[col][col] = one;
                    continue;
                }
                match letter {
                    Pauli::X => m[col ^ (1 << target)][col] = one,
                    Pauli::Z => m[col][col] = if bit(col, target) == 1 { -one } else { one },
                    Pauli::Y => {
                        m[col ^ (1 << target)][col] = if bit(col, target) == 0 { i } else { -i };
                    }
                    Pauli::I => unreachable!("controlled identity is not a gate"),
                }
            }
        }
    }
    m
}

fn mat_close(a: &Mat, b: &Mat) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() < 1e-9))
}

fn assert_tableau_matches_dense(gates: Vec<Gate>, nq: usize) {
    let circ = Circuit::new(nq, gates.clone()).unwrap();
    let tab = Tableau::run(&circ).unwrap();
    let mut u = mat_identity(1 << nq);
    for g in &gates {
        u = mat_mul(&dense_gate(g, nq), &u);
    }
    let udag = mat_dagger(&u);
    for q in 0..nq {
        for z_input in [false, true] {
            let mut input = SymplecticVec::zero(nq);
            input.set_letter(q, if z_input { Pauli::Z } else { Pauli::X });
            let conjugated = mat_mul(&mat_mul(&u, &dense_pauli(&input, false, nq)), &udag);
            let (image, negative) = if z_input {
                tab.z_image(q)
            } else {
                tab.x_image(q)
            };
            assert!(
                mat_close(&conjugated, &dense_pauli(image, negative, nq)),
                "{:?}: image of {} on qubit {} disagrees with the dense oracle",
                gates,
                if z_input { 'Z' } else { 'X' },
                q
            );
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let mut p = Poly::zero();
    for d in 0..=max_degree {
        p.set_coeff(d, rng.gen_bool(0.5));
    }
    p
}

fn random_pauli_poly(rng: &mut ChaCha8Rng, width: usize, max_degree: usize) -> PauliPoly {
    loop {
        let x: Vec<Poly> = (0..width).map(|_| random_poly(rng, max_degree)).collect();
        let z: Vec<Poly> = (0..width).map(|_| random_poly(rng, max_degree)).collect();
        let g = PauliPoly::from_parts(x, z);
        if !g.is_identity() {
            return g;
        }
    }
}

#[test]
fn criterion_7_algebra_property_suites() {
    let started = Instant::now();

    // Commutation at all shifts versus a windowed exhaustive check.
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let (width, max_degree) = (3, 2);
    let window_qubits = width * (2 * max_degree + 2);
    for pair in 0..1000 {
        let a = random_pauli_poly(&mut rng, width, max_degree);
        let b = random_pauli_poly(&mut rng, width, max_degree);
        let fast = a.gen_commute(&b).unwrap();
        let mut exhaustive = true;
        for sa in 0..=max_degree + 1 {
            for sb in 0..=max_degree + 1 {
                let va = a.expand(sa, window_qubits).unwrap();
                let vb = b.expand(sb, window_qubits).unwrap();
                if va.symplectic_dot(&vb) {
                    exhaustive = false;
                }
            }
        }
        assert_eq!(fast, exhaustive, "pair {}: {} vs {}", pair, a, b);
    }

    // Tableau conjugation versus a dense unitary oracle, covering every
    // gate kind and then random circuits on up to three qubits.
    for gates in [
        vec![Gate::H(0)],
        vec![Gate::S(0)],
        vec![Gate::X(0)],
        vec![Gate::Z(0)],
        vec![Gate::Cp {
            control: 0,
            target: 1,
            letter: Pauli::X,
        }],
        vec![Gate::Cp {
            control: 0,
            target: 1,
            letter: Pauli::Y,
        }],
        vec![Gate::Cp {
            control: 0,
            target: 1,
            letter: Pauli::Z,
        }],
        vec![
            Gate::Cp {
                control: 1,
                target: 0,
                letter: Pauli::Y,
            },
            Gate::H(1),
            Gate::S(0),
        ],
    ] {
        assert_tableau_matches_dense(gates, 2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    for _ in 0..40 {
        let nq = 3;
        let gates: Vec<Gate> = (0..12)
            .map(|_| {
                let q = rng.gen_range(0..nq);
                match rng.gen_range(0..7) {
                    0 => Gate::H(q),
                    1 => Gate::S(q),
                    2 => Gate::X(q),
                    3 => Gate::Z(q),
                    kind => {
                        let mut t = rng.gen_range(0..nq - 1);
                        if t >= q {
                            t += 1;
                        }
                        let letter = [Pauli::X, Pauli::Y, Pauli::Z][kind - 4];
                        Gate::Cp {
                            control: q,
                            target: t,
                            letter,
                        }
                    }
                }
            })
            .collect();
        assert_tableau_matches_dense(gates, nq);
    }

    // Polynomial division reconstructs the dividend.
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for pair in 0..1000 {
        let deg_a = rng.gen_range(0..30);
        let a = random_poly(&mut rng, deg_a);
        let b = loop {
            let deg_b = rng.gen_range(0..15);
            let b = random_poly(&mut rng, deg_b);
            if !b.is_zero() {
                break b;
            }
        };
        let (quot, rem) = a.divmod(&b).unwrap();
        let mut back = quot.checked_mul(&b).unwrap();
        back.add_assign(&rem);
        assert_eq!(back, a, "pair {}: ({}) / ({})", pair, a, b);
        if !rem.is_zero() {
            assert!(
                rem.degree().unwrap() < b.degree().unwrap(),
                "remainder too large"
            );
        }
    }

    // Syndrome extraction is linear over error composition.
    let c = shipped_code("qcc5.code");
    let ch = depolarizing(0.75).unwrap();
    let q = 3;
    let n_qubits = c.n() * q + c.m();
    for pair in 0..500u64 {
        let e1 = sample_error(&ch, n_qubits, 5000 + 2 * pair);
        let e2 = sample_error(&ch, n_qubits, 5001 + 2 * pair);
        let mut combined = SymplecticVec::zero(n_qubits);
        for (p, &letter) in e1.dense(n_qubits).unwrap().iter().enumerate() {
            combined.set_letter(p, letter);
        }
        for (p, &letter) in e2.dense(n_qubits).unwrap().iter().enumerate() {
            if letter != Pauli::I {
                let mut other = SymplecticVec::zero(n_qubits);
                other.set_letter(p, letter);
                combined.xor_assign(&other);
            }
        }
        let letters: Vec<Pauli> = (0..n_qubits).map(|p| combined.letter_at(p)).collect();
        let sum = PauliString::new(letters, 0);
        let s1 = extract_syndromes(&c, &e1, q).unwrap();
        let s2 = extract_syndromes(&c, &e2, q).unwrap();
        let s12 = extract_syndromes(&c, &sum, q).unwrap();
        for j in 0..q {
            for i in 0..c.gen_count() {
                assert_eq!(
                    s12.anticommutes(j, i),
                    s1.anticommutes(j, i) ^ s2.anticommutes(j, i),
                    "pair {}: check ({}, {})",
                    pair,
                    j,
                    i
                );
            }
        }
    }

    within_budget(started, Duration::from_secs(60), "property suites");
}

/// Median-free robust per-decode time: minimum over passes of the average
/// time across `reps` identical decodes.
fn time_decode(c: &CodeSpec, ch: &ChannelModel, q: usize, reps: u32, passes: u32) -> f64 {
    let n_qubits = c.n() * q + c.m();
    let error = sample_error(ch, n_qubits, 7);
    let stream = extract_syndromes(c, &error, q).unwrap();
    let opts = DecodeOptions::default();
    let mut best = f64::INFINITY;
    viterbi_decode(c, ch, &stream, &opts).unwrap();
    for _ in 0..passes {
        let pass = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(viterbi_decode(std::hint::black_box(c), ch, &stream, &opts))
                .unwrap();
        }
        best = best.min(pass.elapsed().as_secs_f64() / reps as f64);
    }
    best
}

#[test]
fn criterion_8_decode_time_and_encoder_size_scale_affinely() {
    let started = Instant::now();
    let c = shipped_code("qcc5.code");
    let ch = depolarizing(0.05).unwrap();

    let qs = [10usize, 20, 40];
    let times: Vec<f64> = qs
        .iter()
        .map(|&q| time_decode(&c, &ch, q, 200, 7))
        .collect();

    // Least-squares affine fit through the three measurements.
    let qbar = qs.iter().sum::<usize>() as f64 / qs.len() as f64;
    let tbar = times.iter().sum::<f64>() / times.len() as f64;
    let slope = qs
        .iter()
        .zip(&times)
        .map(|(&q, &t)| (q as f64 - qbar) * (t - tbar))
        .sum::<f64>()
        / qs.iter().map(|&q| (q as f64 - qbar).powi(2)).sum::<f64>();
    let intercept = tbar - slope * qbar;
    assert!(slope > 0.0, "decode time must grow with the block count");
    for (&q, &t) in qs.iter().zip(&times) {
        let predicted = intercept + slope * q as f64;
        let residual = (predicted - t).abs() / t;
        assert!(
            residual < 0.10,
            "q = {}: measured {:.6} s, affine fit {:.6} s, residual {:.1}%; all times {:?}",
            q,
            t,
            predicted,
            residual * 100.0,
            times
        );
    }

    // Encoder gate counts over the same block range, exactly affine.
    let sf = standard_form(&c).unwrap();
    let lo: LogicalOps = derive_logicals(&sf).unwrap();
    let counts: Vec<isize> = qs
        .iter()
        .map(|&q| build_encoder(&c, &sf, &lo, q, false).unwrap().gate_count() as isize)
        .collect();
    assert_eq!(
        (counts[2] - counts[1]),
        2 * (counts[1] - counts[0]),
        "gate counts {:?} are not affine over q = {:?}",
        counts,
        qs
    );

    within_budget(started, Duration::from_secs(120), "scaling measurements");
}
