//! Vertex ranking of a path graph.

/// Colors for the path `0 - 1 - ... - n-1`. The middle vertex of every
/// recursive segment of length `m` gets color `floor(log2 m) + 1`, so the
/// largest color is `floor(log2 2n)`.
pub fn vertex_ranking(n: usize) -> Vec<u32> {
    let mut colors = vec![0; n];
    fill(&mut colors, 0, n);
    colors
}

fn fill(colors: &mut [u32], lo: usize, hi: usize) {
    if lo >= hi {
        return;
    }
    let m = hi - lo;
    let mid = lo + m / 2;
    colors[mid] = m.ilog2() + 1;
    fill(colors, lo, mid);
    fill(colors, mid + 1, hi);
}

/// Checks that every pair of equal colors has a strictly larger color
/// between them.
pub fn is_vertex_ranking(colors: &[u32]) -> bool {
    for i in 0..colors.len() {
        let mut between = 0;
        for j in i + 1..colors.len() {
            if colors[j] == colors[i] && between <= colors[i] {
                return false;
            }
            between = between.max(colors[j]);
        }
    }
    colors.iter().all(|&c| c >= 1)
}
