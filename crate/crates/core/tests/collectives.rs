mod common;

use common::*;
use hipkernels::collectives::run_ranks;
use rand::Rng;

#[test]
fn alltoallv_conserves_items_at_sixteen_ranks() {
    for seed in 0..20 {
        let p = 16;
        // counts[s][d]: how many items rank s sends to rank d.
        let mut r = rng(seed);
        let counts: Vec<Vec<usize>> = (0..p).map(|_| (0..p).map(|_| r.gen_range(0..5)).collect()).collect();
        let received = run_ranks(p, |ctx| {
            let s = ctx.rank();
            let send: Vec<Vec<_>> = (0..p).map(|d| (0..counts[s][d]).map(|k| (s, d, k)).collect()).collect();
            let mut total = Vec::new();
            // Several rounds in a row, each must arrive intact and in order.
            for _ in 0..3 {
                total = ctx.alltoallv::<(usize, usize, usize)>(send.clone())?;
            }
            Ok(total)
        })
        .unwrap();
        for (d, from) in received.iter().enumerate() {
            for (s, items) in from.iter().enumerate() {
                let want: Vec<_> = (0..counts[s][d]).map(|k| (s, d, k)).collect();
                assert_eq!(items, &want);
            }
        }
    }
}

#[test]
fn band_gathers_compose() {
    let got = run_ranks(9, |ctx| {
        let (r, c) = ctx.coords();
        let grid = ctx.grid();
        let row = ctx.allgather_band(&grid.row_band_ranks(r), vec![ctx.rank()])?;
        let col = ctx.allgather_band(&grid.col_band_ranks(c), vec![ctx.rank()])?;
        Ok((row, col))
    })
    .unwrap();
    assert_eq!(got[4], (vec![3, 4, 5], vec![1, 4, 7]));
}
