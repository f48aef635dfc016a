use en_core::IntTuple;
use num_bigint::BigInt;

/// All of `Z^n` without repetition, ordered by max-norm shell and then
/// lexicographically (integer order within a shell). Order-isomorphic to
/// the naturals.
pub fn enumerate_leq_n(n: usize) -> impl Iterator<Item = IntTuple> {
    assert!(n >= 1, "tuples must have at least one coordinate");
    (0u64..).flat_map(move |m| shell_tuples(n, m))
}

/// The tuples of max-norm exactly `m`, in lexicographic order.
pub fn shell_tuples(n: usize, m: u64) -> ShellIter {
    assert!(n >= 1, "tuples must have at least one coordinate");
    let m = i64::try_from(m).expect("shell index fits i64");
    ShellIter {
        n,
        m,
        coords: None,
        done: false,
    }
}

/// Lexicographic odometer over `[-m, m]^n` that skips the interior: when no
/// coordinate so far is extreme, the last coordinate jumps from `-m`
/// straight to `m`.
pub struct ShellIter {
    n: usize,
    m: i64,
    coords: Option<Vec<i64>>,
    done: bool,
}

impl ShellIter {
    fn advance(&mut self) -> bool {
        let coords = self.coords.as_mut().expect("initialized");
        if self.m == 0 {
            return false;
        }
        for pos in (0..self.n).rev() {
            let last = pos == self.n - 1;
            let prefix_extreme = coords[..pos].iter().any(|&c| c.abs() == self.m);
            let next = if last && !prefix_extreme {
                // only -m and m are admissible here
                if coords[pos] == -self.m {
                    Some(self.m)
                } else {
                    None
                }
            } else if coords[pos] < self.m {
                Some(coords[pos] + 1)
            } else {
                None
            };
            match next {
                Some(v) => {
                    coords[pos] = v;
                    for c in coords[pos + 1..].iter_mut() {
                        *c = -self.m;
                    }
                    return true;
                }
                None => continue,
            }
        }
        false
    }
}

impl Iterator for ShellIter {
    type Item = IntTuple;

    fn next(&mut self) -> Option<IntTuple> {
        if self.done {
            return None;
        }
        match self.coords {
            None => {
                self.coords = Some(vec![-self.m; self.n]);
            }
            Some(_) => {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
            }
        }
        let coords = self.coords.as_ref().expect("just set");
        Some(IntTuple::new(coords.iter().map(|&c| BigInt::from(c)).collect()).expect("n >= 1"))
    }
}

/// `(2m+1)^n - (2m-1)^n`, the exact size of shell `m`.
#[cfg(test)]
fn shell_size(n: u32, m: u64) -> u64 {
    if m == 0 {
        return 1;
    }
    (2 * m + 1).pow(n) - (2 * m - 1).pow(n)
}
