//! Pruning every partition of a 5-element set down to a representative family.

use cutcraft::partition::all_partitions;
use cutcraft::rank::{reduce, represents, WeightedPartition};
use cutcraft::Result;

pub fn run() -> Result<()> {
    let family: Vec<WeightedPartition> = all_partitions(5)
        .into_iter()
        .enumerate()
        .map(|(i, partition)| WeightedPartition { partition, weight: (i as u64 * 37) % 11 })
        .collect();
    let kept = reduce(&family);
    assert!(represents(&kept, &family));
    println!("{} partitions reduced to {} (bound {})", family.len(), kept.len(), 1 << 4);
    for w in &kept {
        println!("  {:?} weight {}", w.partition.blocks(), w.weight);
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
