//! Many slices over one shared graph.
//!
//! With the `parallel` feature (on by default) [`slice_many`] fans the
//! criteria out over the rayon thread pool; without it, it runs them in
//! order. Results are returned in criterion order either way.

use crate::acme::ArchDescription;
use crate::sadg::Sadg;
use crate::slicer::{resolve_criterion, slice_graph, GraphSlice, SliceCriterion, SliceDirection};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn slice_many_sequential(
    g: &Sadg<'_>,
    criteria: &[SliceCriterion],
    direction: SliceDirection,
) -> Vec<GraphSlice> {
    criteria
        .iter()
        .map(|c| slice_graph(g, c, direction))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn slice_many_parallel(
    g: &Sadg<'_>,
    criteria: &[SliceCriterion],
    direction: SliceDirection,
) -> Vec<GraphSlice> {
    criteria
        .par_iter()
        .map(|c| slice_graph(g, c, direction))
        .collect()
}

pub fn slice_many(
    g: &Sadg<'_>,
    criteria: &[SliceCriterion],
    direction: SliceDirection,
) -> Vec<GraphSlice> {
    #[cfg(feature = "parallel")]
    {
        slice_many_parallel(g, criteria, direction)
    }
    #[cfg(not(feature = "parallel"))]
    {
        slice_many_sequential(g, criteria, direction)
    }
}

/// One single-interface criterion per port and role, in declaration order.
pub fn per_interface_criteria(desc: &ArchDescription) -> Vec<SliceCriterion> {
    desc.elements()
        .flat_map(|e| {
            e.interfaces().into_iter().map(move |i| {
                resolve_criterion(desc, e.name().as_str(), [i.name.as_str()])
                    .expect("interface of a declared element")
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acme::parse;
    use crate::sadg::build_sadg;

    #[test]
    fn batch_matches_one_by_one() {
        let d = parse(
            r#"System s = {
                Component a = { Port o = { Properties { direction = "out"; } } Port i; }
                Connector k = { Role r; Role t; }
                Component b = { Port i; }
                Attachments g = { a.o to k.r; b.i to k.t; }
            }"#,
        )
        .unwrap();
        let g = build_sadg(&d).unwrap();
        let criteria = per_interface_criteria(&d);
        assert_eq!(criteria.len(), 5);
        for dir in [SliceDirection::Backward, SliceDirection::Forward] {
            let seq = slice_many_sequential(&g, &criteria, dir);
            assert_eq!(slice_many(&g, &criteria, dir), seq);
            for (c, s) in criteria.iter().zip(&seq) {
                assert_eq!(s, &slice_graph(&g, c, dir));
            }
        }
    }
}
