/// Area dominated by a set of two-objective points (minimization) and
/// bounded by `reference`. Points not strictly better than the reference
/// in both coordinates contribute nothing.
pub fn hypervolume_2d(points: &[[f64; 2]], reference: [f64; 2]) -> f64 {
    let mut pts: Vec<[f64; 2]> = points
        .iter()
        .copied()
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));

    // Staircase: keep points whose second objective strictly improves.
    let mut stairs: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for p in pts {
        if stairs.last().is_none_or(|s| p[1] < s[1]) {
            stairs.push(p);
        }
    }
    let mut area = 0.0;
    for (i, p) in stairs.iter().enumerate() {
        let next_x = stairs.get(i + 1).map_or(reference[0], |q| q[0]);
        area += (next_x - p[0]) * (reference[1] - p[1]);
    }
    area
}
