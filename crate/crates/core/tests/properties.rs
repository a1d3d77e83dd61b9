use proptest::prelude::*;

use sympdeg_core::degen::{applicable_moves, apply_move, degeneration_path};
use sympdeg_core::oracle::{closure_enumerate, rank_seq_bruteforce, realize_epsilon_form, realize_matrices, MoveKind};
use sympdeg_core::rep::{dual, ext_dim, hom_dim, ranks_of, rep_of};
use sympdeg_core::symdegen::{is_epsilon_rank, EpsilonRep, SymmetricType};
use sympdeg_core::{Representation, Segment};

fn rep_on(n: usize) -> impl Strategy<Value = Representation> {
    prop::collection::vec((1..=n, 0..n, 1u32..=3), 0..6).prop_map(move |segs| {
        let mut r = Representation::zero(n);
        for (i, len, m) in segs {
            let j = (i + len).min(n);
            r.add(Segment { i, j }, m);
        }
        r
    })
}

fn arb_rep(max_n: usize) -> impl Strategy<Value = Representation> {
    (1..=max_n).prop_flat_map(rep_on)
}

/// Two representations on the same quiver.
fn arb_pair(max_n: usize) -> impl Strategy<Value = (Representation, Representation)> {
    (1..=max_n).prop_flat_map(|n| (rep_on(n), rep_on(n)))
}

/// `M ⊕ ∇M`, which is an ε-representation of the split type.
fn arb_split(max_n: usize) -> impl Strategy<Value = EpsilonRep> {
    arb_rep(max_n).prop_map(|m| {
        let n = m.n();
        let total = m.direct_sum(&dual(&m)).unwrap();
        EpsilonRep::new(total, SymmetricType::split_for(n)).unwrap()
    })
}

proptest! {
    #[test]
    fn ranks_and_multiplicities_are_inverse(m in arb_rep(7)) {
        let r = ranks_of(&m);
        prop_assert!(r.validate().is_ok());
        prop_assert_eq!(rep_of(&r).unwrap(), m);
    }

    #[test]
    fn duality_is_an_involution(m in arb_rep(7)) {
        prop_assert_eq!(dual(&dual(&m)), m.clone());
        prop_assert_eq!(dual(&m).total_dim(), m.total_dim());
    }

    #[test]
    fn euler_form_is_hom_minus_ext((a, b) in arb_pair(5)) {
        let lhs = hom_dim(&a, &b).unwrap() as i64 - ext_dim(&a, &b).unwrap() as i64;
        prop_assert_eq!(lhs, a.dim_vector().euler_form(&b.dim_vector()));
    }

    #[test]
    fn moves_only_lower_ranks(m in arb_rep(6)) {
        let r = ranks_of(&m);
        for mv in applicable_moves(&m) {
            let out = apply_move(&m, mv).unwrap();
            let ro = ranks_of(&out);
            prop_assert!(r.dominates(&ro));
            prop_assert_ne!(ro, r.clone());
            prop_assert_eq!(out.dim_vector(), m.dim_vector());
        }
    }

    #[test]
    fn realized_ranks_match(m in arb_rep(6), seed in any::<u64>()) {
        let real = realize_matrices(&m).scrambled(seed);
        prop_assert_eq!(rank_seq_bruteforce(&real), ranks_of(&m));
    }

    #[test]
    fn split_forms_verify(e in arb_split(6), seed in any::<u64>()) {
        prop_assert!(is_epsilon_rank(&e.ranks(), e.sym()));
        let f = realize_epsilon_form(&e).unwrap();
        prop_assert_eq!(f.verify(), Ok(()));
        prop_assert_eq!(f.scrambled(seed).verify(), Ok(()));
        prop_assert_eq!(rank_seq_bruteforce(&f.real), e.ranks());
    }

    #[test]
    fn ordinary_path_reaches_its_target(m in arb_rep(5)) {
        // Every member of the closure is reached by the greedy path.
        // Too large to enumerate quickly: nothing to check.
        let Ok(closure) = closure_enumerate(&m, MoveKind::Ordinary, None, 60) else {
            return Ok(());
        };
        let rm = ranks_of(&m);
        for n in closure.iter().take(10) {
            prop_assert!(rm.dominates(&ranks_of(n)));
            let path = degeneration_path(&m, n).unwrap();
            prop_assert_eq!(path.last().map_or(&m, |s| &s.rep), n);
        }
    }
}
