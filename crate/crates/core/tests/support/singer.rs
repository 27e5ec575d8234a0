//! Cyclic triangle presentations over Z/N, N = q^2 + q + 1, for prime q.
//!
//! Points are residues mod N. A perfect difference set D comes from the
//! hyperplane {tr-like coordinate = 0} of GF(q^3)* / GF(q)*, translated so
//! that q D = D. The triples are (x, x + a, x + a + q a) for a in D.

#![allow(dead_code)]

use a2kt::presentation::{parse_presentation, TrianglePresentation};

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Multiplies a polynomial of degree < 3 by x modulo x^3 - c2 x^2 - c1 x - c0.
fn times_x(p: [u64; 3], c: [u64; 3], q: u64) -> [u64; 3] {
    let top = p[2];
    [
        (top * c[0]) % q,
        (p[0] + top * c[1]) % q,
        (p[1] + top * c[2]) % q,
    ]
}

/// Coefficients of a primitive cubic, found by search.
fn primitive_cubic(q: u64) -> [u64; 3] {
    let order = q * q * q - 1;
    for c0 in 1..q {
        for c1 in 0..q {
            for c2 in 0..q {
                let c = [c0, c1, c2];
                let mut p = [1, 0, 0];
                let mut k = 0u64;
                loop {
                    p = times_x(p, c, q);
                    k += 1;
                    if p == [1, 0, 0] || k > order {
                        break;
                    }
                }
                if k == order {
                    return c;
                }
            }
        }
    }
    unreachable!("a primitive cubic exists over every prime field")
}

/// Planar difference set mod q^2 + q + 1 fixed by multiplication by q.
pub fn difference_set(q: u64) -> Vec<u64> {
    assert!(is_prime(q), "prime order only");
    let n = q * q + q + 1;
    let c = primitive_cubic(q);
    let mut d = Vec::new();
    let mut p = [1, 0, 0];
    for i in 0..n {
        if p[2] == 0 {
            d.push(i);
        }
        p = times_x(p, c, q);
    }
    assert_eq!(d.len() as u64, q + 1);
    for s in 0..n {
        let mut t: Vec<u64> = d.iter().map(|a| (a + s) % n).collect();
        t.sort_unstable();
        let mut tq: Vec<u64> = t.iter().map(|a| a * q % n).collect();
        tq.sort_unstable();
        if t == tq {
            return t;
        }
    }
    panic!("no translate of the difference set is fixed by {q}")
}

/// Presentation text with generators `x0 .. x{N-1}`, one relator per orbit.
pub fn presentation_text(q: u64) -> String {
    let n = q * q + q + 1;
    let d = difference_set(q);
    let mut triples = std::collections::BTreeSet::new();
    for x in 0..n {
        for &a in &d {
            let t = [x, (x + a) % n, (x + a + q * a) % n];
            // keep the rotation with the smallest first entry
            let r = (0..3)
                .map(|k| [t[k], t[(k + 1) % 3], t[(k + 2) % 3]])
                .min()
                .unwrap();
            triples.insert(r);
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut s = format!(
        "# cyclic presentation over Z/{n}\nq {q}\ngen {}\n",
        names.join(" ")
    );
    for t in triples {
        s.push_str(&format!("rel x{} x{} x{}\n", t[0], t[1], t[2]));
    }
    s
}

pub fn presentation(q: u64) -> TrianglePresentation {
    parse_presentation(&presentation_text(q)).expect("generated text parses")
}
