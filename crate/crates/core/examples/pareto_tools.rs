//! Non-dominated sorting, crowding distance, elite selection and
//! hypervolume on a hand-made point set.

use ucd::metrics::{front_diversity, hypervolume_2d, FitnessPoint};
use ucd::moo::{crowding_distance, elite_indices, fast_nondominated_sort};

fn main() -> ucd::Result<()> {
    let points: Vec<FitnessPoint> = [
        (0.9, 0.1),
        (0.5, 0.5),
        (0.1, 0.9),
        (0.4, 0.4),
        (0.2, 0.2),
        (0.7, 0.3),
        (0.3, 0.6),
        (0.05, 0.05),
    ]
    .into_iter()
    .map(|(a, b)| FitnessPoint::new(a, b))
    .collect();

    let fronts = fast_nondominated_sort(&points);
    for (rank, front) in fronts.iter().enumerate() {
        let pts: Vec<FitnessPoint> = front.iter().map(|&i| points[i]).collect();
        let crowd = crowding_distance(&pts);
        println!("F{rank}: {front:?} crowding {crowd:.3?}");
    }
    println!("survivors of 8 -> 4: {:?}", elite_indices(&points, 4)?);
    let first: Vec<FitnessPoint> = fronts[0].iter().map(|&i| points[i]).collect();
    println!(
        "F0 hypervolume {:.4}, diversity {}",
        hypervolume_2d(&first, FitnessPoint::ORIGIN)?,
        front_diversity(&points)
    );
    Ok(())
}
