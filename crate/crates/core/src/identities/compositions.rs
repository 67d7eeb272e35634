/// Iterator over the weak compositions of `n` into `m` parts, in reverse
/// lexicographic order starting from `(n, 0, …, 0)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Vec<u64>,
    done: bool,
}

pub fn enumerate_compositions(n: u64, m: usize) -> Compositions {
    assert!(m >= 1, "a composition needs at least one part");
    let mut current = vec![0; m];
    current[0] = n;
    Compositions { current, done: false }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let last = self.current.len() - 1;
        let tail = std::mem::take(&mut self.current[last]);
        match self.current[..last].iter().rposition(|&k| k > 0) {
            Some(j) => {
                self.current[j] -= 1;
                self.current[j + 1] = tail + 1;
            }
            None => self.done = true,
        }
        Some(out)
    }
}
