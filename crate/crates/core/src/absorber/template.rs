//! Robustly matchable bipartite templates.
//!
//! Left side: `U` (indices `0..2s`) then `W` (indices `2s..3s+e`), where
//! `e = εs`. Right side: `X` with `3s` vertices. The template is robust when
//! `U ∪ W'` matches perfectly onto `X` for every `s`-subset `W'` of `W`.

use rand::seq::index::sample;
use rand::Rng;

use super::AbsorberError;
use crate::matching::{max_matching, BipartiteGraph};
use crate::par::{self, Parallelism};

/// Degree cap on every template vertex.
pub const MAX_DEGREE: usize = 40;

const MAX_ATTEMPTS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemplateCheck {
    /// Every `s`-subset of `W`.
    Exhaustive,
    /// This many uniformly random `s`-subsets.
    Sampled(usize),
}

impl TemplateCheck {
    /// Exhaustive for `s <= 6`, otherwise a thousand samples.
    pub fn for_size(s: usize) -> Self {
        if s <= 6 {
            TemplateCheck::Exhaustive
        } else {
            TemplateCheck::Sampled(1000)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    s: usize,
    e: usize,
    /// `x -> sorted left neighbours`.
    x_adj: Vec<Vec<usize>>,
}

impl Template {
    /// Wraps explicit `X` neighbourhoods without certifying anything.
    pub fn from_neighbourhoods(
        s: usize,
        e: usize,
        mut x_adj: Vec<Vec<usize>>,
    ) -> Result<Self, AbsorberError> {
        if s == 0 {
            return Err(AbsorberError::TemplateParameter("s must be positive".into()));
        }
        if x_adj.len() != 3 * s {
            return Err(AbsorberError::TemplateParameter(format!(
                "{} X-vertices given, expected {}",
                x_adj.len(),
                3 * s
            )));
        }
        let left = 3 * s + e;
        for list in &mut x_adj {
            list.sort_unstable();
            list.dedup();
            if list.iter().any(|&u| u >= left) {
                return Err(AbsorberError::TemplateParameter(
                    "left neighbour out of range".into(),
                ));
            }
        }
        Ok(Self { s, e, x_adj })
    }

    /// Deterministic low-edge template: `x_1..x_{2s}` form a cycle with `U`
    /// (`x_i ~ u_i, u_{i+1}`), and `x_{2s+1}..x_{3s}` are complete to `W`.
    /// Needs `s + e <= 40`. `W`-vertices have degree `s`, so the minimum
    /// degree is 2 only when `s >= 2`.
    pub fn compact(s: usize, e: usize) -> Result<Self, AbsorberError> {
        if s == 0 || e == 0 {
            return Err(AbsorberError::TemplateParameter(
                "s and e must be positive".into(),
            ));
        }
        if s + e > MAX_DEGREE {
            return Err(AbsorberError::TemplateParameter(format!(
                "compact template needs s + e <= {MAX_DEGREE}"
            )));
        }
        let mut x_adj = Vec::with_capacity(3 * s);
        for i in 0..2 * s {
            x_adj.push(vec![i, (i + 1) % (2 * s)]);
        }
        for _ in 0..s {
            x_adj.push((2 * s..3 * s + e).collect());
        }
        Self::from_neighbourhoods(s, e, x_adj)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `|W| - s`.
    pub fn slack(&self) -> usize {
        self.e
    }

    pub fn left_len(&self) -> usize {
        3 * self.s + self.e
    }

    pub fn x_len(&self) -> usize {
        3 * self.s
    }

    pub fn u_range(&self) -> std::ops::Range<usize> {
        0..2 * self.s
    }

    pub fn w_range(&self) -> std::ops::Range<usize> {
        2 * self.s..3 * self.s + self.e
    }

    /// Sorted left neighbours of `x_i` (0-based `i`).
    pub fn neighbours(&self, x: usize) -> &[usize] {
        &self.x_adj[x]
    }

    pub fn x_degree(&self, x: usize) -> usize {
        self.x_adj[x].len()
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left_len()];
        for list in &self.x_adj {
            for &u in list {
                deg[u] += 1;
            }
        }
        deg
    }

    /// `b = |E(B)|`.
    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(Vec::len).sum()
    }

    /// First `X`-vertex whose degree leaves `2..=40`.
    pub fn check_x_degrees(&self) -> Result<(), AbsorberError> {
        match (0..self.x_len()).find(|&x| !(2..=MAX_DEGREE).contains(&self.x_degree(x))) {
            Some(x) => Err(AbsorberError::TemplateDegree {
                x: x + 1,
                degree: self.x_degree(x),
            }),
            None => Ok(()),
        }
    }

    /// `2 <= d <= 40` on both sides.
    pub fn satisfies_degree_bounds(&self) -> bool {
        self.check_x_degrees().is_ok()
            && self
                .left_degrees()
                .iter()
                .all(|d| (2..=MAX_DEGREE).contains(d))
    }

    /// Perfect matching of `U ∪ W'` onto `X`, as `(x, left)` pairs sorted by
    /// `x`. `w_prime` holds left indices from the `W` range.
    pub fn matching_for(&self, w_prime: &[usize]) -> Option<Vec<(usize, usize)>> {
        let mut right: Vec<usize> = self.u_range().collect();
        right.extend_from_slice(w_prime);
        let mut index = vec![usize::MAX; self.left_len()];
        for (i, &u) in right.iter().enumerate() {
            index[u] = i;
        }
        let adj: Vec<Vec<usize>> = self
            .x_adj
            .iter()
            .map(|list| {
                list.iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        let b = BipartiteGraph::new(right.len(), adj).expect("indices in range");
        let m = max_matching(&b);
        (m.len() == self.x_len()).then(|| m.into_iter().map(|(x, i)| (x, right[i])).collect())
    }

    /// Certifies robustness. Returns the number of subsets checked.
    pub fn certify<R: Rng + ?Sized>(
        &self,
        check: TemplateCheck,
        rng: &mut R,
        mode: Parallelism,
    ) -> Result<usize, Vec<usize>> {
        let w: Vec<usize> = self.w_range().collect();
        let subsets: Vec<Vec<usize>> = match check {
            TemplateCheck::Exhaustive => combinations(&w, self.s),
            TemplateCheck::Sampled(count) => (0..count)
                .map(|_| {
                    let mut pick: Vec<usize> = sample(rng, w.len(), self.s)
                        .into_iter()
                        .map(|i| w[i])
                        .collect();
                    pick.sort_unstable();
                    pick
                })
                .collect(),
        };
        let results = par::map(mode, &subsets, |sub| self.matching_for(sub).is_some());
        match results.iter().position(|ok| !ok) {
            Some(i) => Err(subsets[i].clone()),
            None => Ok(subsets.len()),
        }
    }
}

/// All `size`-subsets of `items`, in lexicographic order.
pub(crate) fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Builds a template with `εs` slack, which must be a positive integer.
pub fn build_template<R: Rng + ?Sized>(
    s: usize,
    epsilon: f64,
    rng: &mut R,
    check: TemplateCheck,
) -> Result<Template, AbsorberError> {
    let e = epsilon * s as f64;
    let rounded = e.round();
    if !(e > 0.0) || (e - rounded).abs() > 1e-9 {
        return Err(AbsorberError::TemplateParameter(format!(
            "εs = {e} is not a positive integer"
        )));
    }
    build_template_with_slack(s, rounded as usize, rng, check, Parallelism::default())
}

/// Random construction with rejection: every `X`-vertex gets four random
/// left neighbours, left vertices below degree two are topped up, and the
/// result is kept once it passes the degree bounds and `check`.
pub fn build_template_with_slack<R: Rng + ?Sized>(
    s: usize,
    e: usize,
    rng: &mut R,
    check: TemplateCheck,
    mode: Parallelism,
) -> Result<Template, AbsorberError> {
    if s == 0 || e == 0 {
        return Err(AbsorberError::TemplateParameter(
            "s and εs must be positive".into(),
        ));
    }
    let left = 3 * s + e;
    let x_len = 3 * s;
    let d = 4.min(left);
    for _ in 0..MAX_ATTEMPTS {
        let mut x_adj: Vec<Vec<usize>> = (0..x_len)
            .map(|_| sample(rng, left, d).into_vec())
            .collect();
        let mut deg = vec![0usize; left];
        for list in &x_adj {
            for &u in list {
                deg[u] += 1;
            }
        }
        for u in 0..left {
            while deg[u] < 2 {
                let open: Vec<usize> = (0..x_len)
                    .filter(|&x| x_adj[x].len() < MAX_DEGREE && !x_adj[x].contains(&u))
                    .collect();
                if open.is_empty() {
                    break;
                }
                let x = open[rng.gen_range(0..open.len())];
                x_adj[x].push(u);
                deg[u] += 1;
            }
        }
        let t = Template::from_neighbourhoods(s, e, x_adj)?;
        if t.satisfies_degree_bounds() && t.certify(check, rng, mode).is_ok() {
            return Ok(t);
        }
    }
    Err(AbsorberError::TemplateFailed(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(&[1, 2, 3, 4], 3).len(), 4);
        assert_eq!(combinations(&[1, 2, 3, 4, 5], 2).len(), 10);
        assert_eq!(combinations(&[1], 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn compact_template_is_robust() {
        for (s, e) in [(1, 1), (1, 4), (2, 3), (3, 1), (5, 2)] {
            let t = Template::compact(s, e).unwrap();
            assert_eq!(t.edge_count(), 4 * s + s * (s + e));
            let n = t
                .certify(TemplateCheck::Exhaustive, &mut ChaCha8Rng::seed_from_u64(0), Parallelism::Sequential)
                .unwrap();
            assert_eq!(n, combinations(&t.w_range().collect::<Vec<_>>(), s).len());
            t.check_x_degrees().unwrap();
        }
    }

    #[test]
    fn random_template_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = build_template(3, 1.0 / 3.0, &mut rng, TemplateCheck::Exhaustive).unwrap();
        assert_eq!(t.left_len(), 10);
        assert!(t.satisfies_degree_bounds());
    }

    #[test]
    fn non_integral_slack_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            build_template(3, 0.5, &mut rng, TemplateCheck::Exhaustive),
            Err(AbsorberError::TemplateParameter(_))
        ));
    }

    #[test]
    fn non_robust_template_is_caught() {
        // x_3 only sees w_1, so dropping w_1 leaves it unmatched
        let t = Template::from_neighbourhoods(1, 1, vec![vec![0, 1], vec![0, 1], vec![2]]).unwrap();
        let err = t
            .certify(TemplateCheck::Exhaustive, &mut ChaCha8Rng::seed_from_u64(0), Parallelism::Sequential)
            .unwrap_err();
        assert_eq!(err, vec![3]);
    }
}
