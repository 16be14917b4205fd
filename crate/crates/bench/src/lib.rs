//! Inputs shared by the benchmarks.

use schubitope::{rothe, skyline, Composition, Diagram, Permutation};

/// Named diagrams of increasing size: Rothe diagrams of longest elements
/// and skylines of staircase-like compositions.
pub fn corpus(max_n: usize) -> Vec<(String, Diagram)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        let w0 = Permutation::longest(n);
        out.push((format!("rothe-w0-{n}"), rothe(&w0).expect("rothe")));
        let alpha = Composition::new((0..n).map(|i| (i as u32 * 2) % n as u32).collect());
        out.push((
            format!("skyline-{alpha}"),
            skyline(&alpha).expect("skyline"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let c = corpus(5);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0].1.len(), 3);
        assert_eq!(c[4].1.len(), 10);
    }
}
