//! Small symmetric-group helpers: reduced words, minimal coset
//! representatives, inversions.

/// Permutation in one-line notation, 0-based: `v[i] = w(i+1) - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// w(i) with 1-based i.
    pub fn map(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Perm(v)
    }

    /// (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Reduced word (j_1..j_r of simple reflections, 1-based) with
    /// w = s_{j_1} s_{j_2} ... s_{j_r}.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut x = self.0.clone();
        let mut word = Vec::new();
        loop {
            let mut moved = false;
            for i in 0..x.len().saturating_sub(1) {
                if x[i] > x[i + 1] {
                    x.swap(i, i + 1);
                    word.push(i + 1);
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        word.reverse();
        word
    }

    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// Inversion pairs (a,b), 1-based, a<b, w(a)>w(b): the positive roots sent
    /// negative by w.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in 1..=self.n() {
            for b in a + 1..=self.n() {
                if self.map(a) > self.map(b) {
                    v.push((a, b));
                }
            }
        }
        v
    }
}

/// All permutations of n in lex order of one-line notation.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(Perm(cur.clone()));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// The parabolic index set I^{(n)} = {1..ceil(n/2)-1} u {ceil(n/2)+1..n-1}.
pub fn parabolic_i(n: usize) -> Vec<usize> {
    let h = n.div_ceil(2);
    (1..h).chain(h + 1..n).collect()
}

/// Minimal-length coset representatives S_n^I: no descents at positions in I.
pub fn min_coset_reps(n: usize, i_set: &[usize]) -> Vec<Perm> {
    all_perms(n)
        .into_iter()
        .filter(|w| i_set.iter().all(|&i| w.map(i) < w.map(i + 1)))
        .collect()
}

/// Longest element of the parabolic subgroup S_{n,I} (reverses each block).
pub fn parabolic_longest(n: usize, i_set: &[usize]) -> Perm {
    // blocks = connected runs of I
    let mut v: Vec<usize> = (0..n).collect();
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && i_set.contains(&(end + 1)) {
            end += 1;
        }
        v[start..=end].reverse();
        start = end + 1;
    }
    Perm(v)
}

/// w_n of the principal-series identification: w(2i-1) = i, w(2i) = ceil(n/2)+i.
pub fn w_n(n: usize) -> Perm {
    let h = n.div_ceil(2);
    let mut v = vec![0; n];
    for j in 1..=n {
        let w = if j % 2 == 1 { j.div_ceil(2) } else { h + j / 2 };
        v[j - 1] = w - 1;
    }
    Perm(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_compose_back() {
        for w in all_perms(4) {
            let mut x = Perm::identity(4);
            for &j in w.reduced_word().iter() {
                // right-multiply by s_j: swap positions j, j+1
                x.0.swap(j - 1, j);
            }
            assert_eq!(x, w);
            assert_eq!(w.reduced_word().len(), w.length());
        }
    }

    #[test]
    fn coset_reps_count() {
        // |S_n^{I^{(n)}}| = C(n, ceil(n/2))
        let want = [1usize, 1, 2, 3, 6, 10, 20];
        for n in 1..=6 {
            assert_eq!(min_coset_reps(n, &parabolic_i(n)).len(), want[n]);
        }
    }

    #[test]
    fn w4_two_line() {
        let w = w_n(4);
        assert_eq!(w.map(2), 3);
        assert_eq!(w.map(3), 2);
        assert_eq!(w.map(1), 1);
        assert_eq!(w.map(4), 4);
    }

    #[test]
    fn parabolic_longest_blocks() {
        let w = parabolic_longest(5, &parabolic_i(5)); // blocks {1,2,3}, {4,5}
        assert_eq!(w.0, vec![2, 1, 0, 4, 3]);
    }
}
