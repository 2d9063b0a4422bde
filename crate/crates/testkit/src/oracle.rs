//! Reference solver. It knows nothing of components or canonical keys: a
//! position is a flat list of strings and a degree per coin.

use narrow_core::Position;

/// A string between a coin and another coin, or the ground (`None`).
pub type Str = (usize, Option<usize>);

#[derive(Debug, Clone)]
pub struct Strings {
    pub strings: Vec<Str>,
    pub degree: Vec<u32>,
}

impl Strings {
    pub fn of(p: &Position) -> Strings {
        let m = p.frame_len();
        let mut strings = Vec::new();
        for i in 0..m {
            for _ in 0..p.legs()[i] {
                strings.push((i, None));
            }
        }
        for (j, &present) in p.inner_strings().iter().enumerate() {
            if present {
                strings.push((j, Some(j + 1)));
            }
        }
        let mut degree = vec![0; m];
        for &(a, b) in &strings {
            degree[a] += 1;
            if let Some(b) = b {
                degree[b] += 1;
            }
        }
        Strings { strings, degree }
    }

    /// Removes string `k`; returns how many coins lost their last string.
    pub fn cut(&mut self, k: usize) -> i32 {
        let (a, b) = self.strings.remove(k);
        let mut taken = 0;
        for c in std::iter::once(a).chain(b) {
            self.degree[c] -= 1;
            if self.degree[c] == 0 {
                taken += 1;
            }
        }
        taken
    }
}

/// Best net score for the player to move, by exhaustive search.
pub fn brute_value(s: &Strings) -> i32 {
    if s.strings.is_empty() {
        return 0;
    }
    let mut best = i32::MIN;
    for k in 0..s.strings.len() {
        let mut next = s.clone();
        let taken = next.cut(k);
        let v = if taken > 0 { taken + brute_value(&next) } else { -brute_value(&next) };
        best = best.max(v);
    }
    best
}

pub fn brute_position_value(p: &Position) -> i32 {
    brute_value(&Strings::of(p))
}
