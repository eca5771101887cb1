mod common;

use common::*;
use hipkernels::io::{read_matrix_market, CooMatrix};
use hipkernels::oracle::{oracle_extract, DenseRef};

fn dense(c: &CooMatrix) -> DenseRef {
    DenseRef::from_entries(c.nrows(), c.ncols(), c.entries()).unwrap()
}

#[test]
fn extract_command_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = random_coo(30, 20, 0.2, 1);
    save(d, "A.mtx", &a);
    save_vec(d, "p.txt", &[5, 0, 29, 11]);
    save_vec(d, "q.txt", &[19, 2, 3]);
    let out = hipkernels(
        &[
            "extract",
            "--matrix",
            "A.mtx",
            "--pvec",
            "p.txt",
            "--qvec",
            "q.txt",
            "--procs",
            "9",
            "--output",
            "b.mtx",
            "--metrics",
            "m.csv",
        ],
        d,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let got = read_matrix_market(d.join("b.mtx")).unwrap();
    let want = oracle_extract(&dense(&a), &[5, 0, 29, 11], &[19, 2, 3]).unwrap();
    assert_eq!(got.entries(), want.entries().as_slice());
    let rows = metrics_rows(&d.join("m.csv")).unwrap();
    assert_eq!(rows[0][0], "extract");
    assert_eq!(rows[0][4], "");
}

#[test]
fn same_seed_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    save(d, "A.mtx", &random_coo(25, 25, 0.1, 2));
    for name in ["x.mtx", "y.mtx"] {
        let out = hipkernels(
            &[
                "permute", "--matrix", "A.mtx", "--procs", "16", "--seed", "7", "--output", name,
            ],
            d,
        );
        assert!(out.status.success());
    }
    assert_eq!(read(&d.join("x.mtx")), read(&d.join("y.mtx")));
}

#[test]
fn permutation_files_override_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    save(d, "A.mtx", &CooMatrix::new(3, 2, vec![(0, 1, 5.0)]).unwrap());
    save_vec(d, "p.txt", &[2, 0, 1]);
    save_vec(d, "q.txt", &[1, 0]);
    let out = hipkernels(
        &[
            "permute", "--matrix", "A.mtx", "--pvec", "p.txt", "--qvec", "q.txt", "--output", "o.mtx",
        ],
        d,
    );
    assert!(out.status.success());
    // A'[i,j] = A[p[i], q[j]]: A[0,1] appears at (1, 0).
    assert_eq!(read_matrix_market(d.join("o.mtx")).unwrap().entries(), &[(1, 0, 5.0)]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    save(d, "A.mtx", &CooMatrix::new(4, 4, vec![(0, 0, 1.0)]).unwrap());
    save_vec(d, "dup.txt", &[1, 1]);

    let code = |args: &[&str]| hipkernels(args, d).status.code();
    assert_eq!(code(&["permute", "--matrix", "A.mtx"]), Some(2));
    assert_eq!(
        code(&[
            "assign-perm",
            "--matrix",
            "A.mtx",
            "--submatrix",
            "A.mtx",
            "--pvec",
            "dup.txt",
            "--qvec",
            "dup.txt"
        ]),
        Some(2)
    );
    assert_eq!(code(&["nonsense"]), Some(2));
    assert_eq!(
        code(&["permute", "--matrix", "A.mtx", "--seed", "1", "--addop", "sum"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "assign",
            "--matrix",
            "A.mtx",
            "--submatrix",
            "A.mtx",
            "--pvec",
            "dup.txt",
            "--qvec",
            "dup.txt",
            "--addop",
            "max"
        ]),
        Some(2)
    );

    assert_eq!(code(&["permute", "--matrix", "missing.mtx", "--seed", "1"]), Some(1));
    assert_eq!(
        code(&["permute", "--matrix", "A.mtx", "--seed", "1", "--procs", "2"]),
        Some(1)
    );
    assert_eq!(
        code(&["extract", "--matrix", "A.mtx", "--pvec", "dup.txt", "--qvec", "dup.txt"]),
        Some(1)
    );
    std::fs::write(d.join("bad.mtx"), "%%MatrixMarket matrix array real general\n1 1\n1\n").unwrap();
    let out = hipkernels(&["imbalance", "--matrix", "bad.mtx"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.mtx"));
    let empty = CooMatrix::new(4, 4, vec![]).unwrap();
    save(d, "empty.mtx", &empty);
    assert_eq!(code(&["imbalance", "--matrix", "empty.mtx", "--procs", "4"]), Some(1));
}

#[test]
fn bench_appends_a_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = random_coo(40, 40, 0.1, 4);
    save(d, "A.mtx", &a);
    let out = hipkernels(
        &[
            "bench",
            "--matrix",
            "A.mtx",
            "--procs",
            "4",
            "--threads",
            "2",
            "--repeat",
            "3",
            "--metrics",
            "m.csv",
        ],
        d,
    );
    assert!(out.status.success());
    let rows = metrics_rows(&d.join("m.csv")).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[0] == "bench" && r[10] == a.nnz().to_string()));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 4);
}
