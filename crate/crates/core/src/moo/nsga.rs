use crate::error::{Error, Result};
use crate::metrics::{dominates, FitnessPoint};

/// Ranks points into successive non-dominated fronts (both objectives
/// maximized). Indices inside each front are ascending.
pub fn fast_nondominated_sort(points: &[FitnessPoint]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dominates(&points[i], &points[j]) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&points[j], &points[i]) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each point within one front.
///
/// Per objective, points are ordered by value (index breaks ties); the two
/// ends get infinity and each interior point adds the gap between its
/// neighbours divided by the objective's range.
pub fn crowding_distance(front: &[FitnessPoint]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let objectives: [fn(&FitnessPoint) -> f64; 2] = [|p| p.dari, |p| p.dat];
    let mut order: Vec<usize> = (0..n).collect();
    for value in objectives {
        order.sort_by(|&a, &b| value(&front[a]).total_cmp(&value(&front[b])).then(a.cmp(&b)));
        let lo = value(&front[order[0]]);
        let hi = value(&front[order[n - 1]]);
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for k in 1..n - 1 {
            let gap = value(&front[order[k + 1]]) - value(&front[order[k - 1]]);
            dist[order[k]] += gap / range;
        }
    }
    dist
}

/// Indices of the `omega` survivors among `2 * omega` evaluated points.
///
/// Whole fronts are admitted by rank; the front that overflows is cut by
/// descending crowding distance, ties going to the lower index. Repeated
/// copies of a point in that front come after every distinct point, so the
/// two objective extremes survive whenever there is room for two. Points
/// with negative DAT are ranked after every feasible point.
pub fn elite_indices(points: &[FitnessPoint], omega: usize) -> Result<Vec<usize>> {
    if points.len() != 2 * omega {
        return Err(Error::validation(format!(
            "elite selection expects {} points, got {}",
            2 * omega,
            points.len()
        )));
    }
    let (feasible, infeasible): (Vec<usize>, Vec<usize>) =
        (0..points.len()).partition(|&i| points[i].is_feasible());
    let mut fronts = Vec::new();
    for group in [feasible, infeasible] {
        let sub: Vec<FitnessPoint> = group.iter().map(|&i| points[i]).collect();
        for front in fast_nondominated_sort(&sub) {
            fronts.push(front.into_iter().map(|k| group[k]).collect::<Vec<_>>());
        }
    }
    let mut selected = Vec::with_capacity(omega);
    for front in fronts {
        let room = omega - selected.len();
        if room == 0 {
            break;
        }
        if front.len() <= room {
            selected.extend(front);
            continue;
        }
        let pts: Vec<FitnessPoint> = front.iter().map(|&i| points[i]).collect();
        let dist = crowding_distance(&pts);
        let repeat: Vec<bool> = (0..pts.len())
            .map(|k| pts[..k].contains(&pts[k]))
            .collect();
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| {
            repeat[a]
                .cmp(&repeat[b])
                .then(dist[b].total_cmp(&dist[a]))
                .then(front[a].cmp(&front[b]))
        });
        selected.extend(order.into_iter().take(room).map(|k| front[k]));
    }
    Ok(selected)
}
