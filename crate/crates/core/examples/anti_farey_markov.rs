//! The anti-Farey map on the boundary of the ideal polygon and its Markov
//! partition.

use antiholo::external::{markov_partition, BoundaryMap, MarkovPartition};
use antiholo::Result;

pub fn run_example() -> Result<Vec<MarkovPartition>> {
    let bm = BoundaryMap::new(3)?;
    let t = 0.4;
    println!("R(0.4) = {:.6}, preimages {:.6?}", bm.map(t), bm.preimages(t));

    let mut out = Vec::new();
    for d in 2..=4 {
        let m = markov_partition(d)?;
        println!("d = {d}: {} pieces, primitive = {}", m.pieces.len(), m.primitive);
        for row in &m.transition {
            let s: String = row.iter().map(|&x| if x == 1 { '#' } else { '.' }).collect();
            println!("  {s}");
        }
        out.push(m);
    }
    print!("{}", out[1].to_csv());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
