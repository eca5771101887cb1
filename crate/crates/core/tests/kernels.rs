use hipkernels::kernels::{
    build_local_matrix, local_add, partition_columns, prepare_send_buffer, send_buffer_index, send_offsets,
    sort_triples_chunked,
};
use hipkernels::{AddOp, LocalDcsc, MatrixLayout, ProcGrid, Triple};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn counters() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=8, 1usize..=16).prop_flat_map(|(t, d)| vec(vec(0usize..6, d), t))
}

/// Unique (lcol, lrow) keys inside an `nrows x ncols` block, sorted.
fn block(nrows: usize, ncols: usize) -> impl Strategy<Value = LocalDcsc> {
    btree_set((0..ncols, 0..nrows), 0..(nrows * ncols).min(60)).prop_map(move |keys| {
        let t: Vec<Triple> = keys
            .into_iter()
            .enumerate()
            .map(|(k, (c, r))| Triple::new(r, c, k as f64 + 0.5))
            .collect();
        LocalDcsc::from_sorted_triples(&t, nrows, ncols).unwrap()
    })
}

proptest! {
    #[test]
    fn send_buffer_index_is_a_bijection(counter in counters()) {
        let nprocs = counter[0].len();
        let (pp, to) = send_offsets(&counter, nprocs);
        let total: usize = counter.iter().flatten().sum();
        prop_assert_eq!(pp.len(), nprocs + 1);
        prop_assert_eq!(pp[nprocs], total);
        let mut hit = vec![false; total];
        for (t, row) in counter.iter().enumerate() {
            for (d, &cnt) in row.iter().enumerate() {
                for k in 0..cnt {
                    let pos = send_buffer_index(t, d, k, &pp, &to);
                    prop_assert!(pos >= pp[d] && pos < pp[d + 1]);
                    prop_assert!(!std::mem::replace(&mut hit[pos], true));
                }
            }
        }
        prop_assert!(hit.into_iter().all(|h| h));
    }

    #[test]
    fn send_plan_independent_of_threads(a in block(9, 11), seed in any::<u64>()) {
        let mut rows: Vec<usize> = (0..9).collect();
        let mut cols: Vec<usize> = (0..11).collect();
        // Cheap deterministic shuffle.
        let mut s = seed | 1;
        for v in [&mut rows, &mut cols] {
            for i in (1..v.len()).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                v.swap(i, (s % (i as u64 + 1)) as usize);
            }
        }
        let dst = MatrixLayout::new(ProcGrid::new(4).unwrap(), 9, 11);
        let reference = prepare_send_buffer(&a, &rows, &cols, &dst, 1).unwrap();
        prop_assert_eq!(reference.len(), a.nnz());
        for nthreads in 2..=5 {
            let plan = prepare_send_buffer(&a, &rows, &cols, &dst, nthreads).unwrap();
            prop_assert_eq!(plan.send_counts(), reference.send_counts());
            for d in 0..4 {
                let mut x = plan.slice_for(d).to_vec();
                let mut y = reference.slice_for(d).to_vec();
                x.sort_by_key(Triple::key);
                y.sort_by_key(Triple::key);
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn chunked_sort_matches_serial(keys in btree_set((0usize..50, 0usize..50), 0..300), nthreads in 1usize..9, seed in any::<u64>()) {
        let mut t: Vec<Triple> = keys.iter().map(|&(c, r)| Triple::new(r, c, (r * 50 + c) as f64)).collect();
        let mut s = seed | 1;
        for i in (1..t.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            t.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let sorted = sort_triples_chunked(t.clone(), nthreads);
        t.sort_by_key(Triple::key);
        prop_assert_eq!(sorted, t.clone());
        let m = build_local_matrix(t.clone(), 50, 50, nthreads).unwrap();
        prop_assert_eq!(m.to_triples(), t);
    }

    #[test]
    fn dcsc_round_trip(a in block(13, 7)) {
        a.validate().unwrap();
        let back = LocalDcsc::from_sorted_triples(&a.to_triples(), 13, 7).unwrap();
        prop_assert_eq!(back.nzc(), a.jc().len());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn local_add_is_pattern_union(a in block(6, 6), b in block(6, 6)) {
        let sum = local_add(&a, &b, AddOp::SelectSecond).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let want = b.get(i, j).or(a.get(i, j));
                prop_assert_eq!(sum.get(i, j), want);
            }
        }
    }

    #[test]
    fn column_partition_covers(a in block(5, 40), nthreads in 1usize..7) {
        let parts = partition_columns(a.cp(), nthreads);
        prop_assert_eq!(parts.len(), nthreads);
        let mut next = 0;
        for p in &parts {
            prop_assert_eq!(p.start, next);
            next = p.end;
        }
        prop_assert_eq!(next, a.nzc());
    }
}
