use std::collections::HashSet;

use mlham_core::hamilton::{cycle_length, neighbors, successor};
use mlham_core::verify::check_stream;
use mlham_core::{BitWord, GluingPlan, HamiltonStream, MiddleLevels, Triple};
use proptest::prelude::*;

#[test]
fn generated_cycles_verify() {
    for n in 1..=8 {
        let plan = GluingPlan::build(n).unwrap();
        let report = check_stream(n, HamiltonStream::new(&plan)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.count, cycle_length(n).unwrap());
    }
}

#[test]
fn first_vertices() {
    let three: Vec<String> = mlham_core::hamilton::generate(3)
        .unwrap()
        .take(4)
        .map(|v| v.to_string())
        .collect();
    assert_eq!(three[0], "1010100");
    let words: Vec<BitWord> = three.iter().map(|s| s.parse().unwrap()).collect();
    for pair in words.windows(2) {
        assert_eq!(pair[0].hamming(&pair[1]), Some(1));
    }
}

/// `n` together with a uniformly chosen set of `n` or `n+1` one positions.
fn middle_vertex() -> impl Strategy<Value = (usize, BitWord)> {
    (1usize..=7).prop_flat_map(|n| {
        let dim = 2 * n + 1;
        proptest::sample::subsequence((0..dim).collect::<Vec<_>>(), n..=n + 1).prop_map(
            move |ones| {
                let v: BitWord = (0..dim).map(|i| ones.contains(&i)).collect();
                (n, v)
            },
        )
    })
}

proptest! {
    #[test]
    fn successor_walks_the_cycle((n, v) in middle_vertex()) {
        let plan = GluingPlan::build(n).unwrap();
        prop_assert!(MiddleLevels::new(n).unwrap().contains(&v));
        prop_assert_eq!(Triple::decode(&v).unwrap().encode(), v.clone());

        // walk forward from v, then retrace the steps
        let steps = (cycle_length(n).unwrap() as usize - 2).min(50);
        let [a, _] = neighbors(&plan, &v).unwrap();
        let mut path = vec![a, v];
        let mut seen: HashSet<BitWord> = path.iter().cloned().collect();
        for _ in 0..steps {
            let k = path.len();
            let next = successor(&plan, &path[k - 2], &path[k - 1]).unwrap();
            prop_assert_eq!(next.hamming(&path[k - 1]), Some(1));
            prop_assert!(seen.insert(next.clone()));
            path.push(next);
        }
        for k in (2..path.len()).rev() {
            let back = successor(&plan, &path[k], &path[k - 1]).unwrap();
            prop_assert_eq!(&back, &path[k - 2]);
        }
    }
}
