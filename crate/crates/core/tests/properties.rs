use proptest::prelude::*;

use finpar::corpus::{flag_or_trivial, named_ambient, Corpus};
use finpar::exactlin::{IsotropyClass, Ring, Subspace};
use finpar::flags::{gl_stabilizer, is_self_taut};
use finpar::liealg::{is_parabolic, MatrixLieSubalgebra, ParabolicVerdict};
use finpar::limits::{DirectSystem, TailSubspace};

fn ring_of(k: u8) -> Ring {
    [Ring::Rat, Ring::Gauss, Ring::Quat][k as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coarser_flags_have_larger_stabilizers(seed in any::<u64>(), k in 0u8..3, n in 2usize..5) {
        let ring = ring_of(k);
        let mut c = Corpus::new(seed);
        let fine = c.flag(ring, n);
        let kept: Vec<Subspace> = fine
            .proper_members()
            .iter()
            .filter(|_| c.below(2) == 1)
            .cloned()
            .collect();
        let coarse = flag_or_trivial(ring, n, &kept).unwrap();
        prop_assert!(fine.refines(&coarse));
        prop_assert!(gl_stabilizer(&coarse).contains_space(&gl_stabilizer(&fine)));
    }

    #[test]
    fn self_taut_members_are_isotropic_or_coisotropic(seed in any::<u64>(), which in 0usize..3) {
        let a = named_ambient(["SP(2)", "SO(5)", "SO(6)"][which]).unwrap();
        let f = Corpus::new(seed).ambient_flag(&a).unwrap();
        prop_assert!(is_self_taut(&f, a.form()).unwrap());
        for m in f.members() {
            prop_assert_ne!(a.form().isotropy_class(m).unwrap(), IsotropyClass::Neither);
        }
    }

    #[test]
    fn generated_stabilizers_are_closed_and_parabolic(seed in any::<u64>(), which in 0usize..3) {
        let a = named_ambient(["GL(3)", "SL(3)", "SP(2)"][which]).unwrap();
        let f = Corpus::new(seed).ambient_flag(&a).unwrap();
        let p = MatrixLieSubalgebra::flag_stabilizer(a.clone(), &[&f]).unwrap();
        let again = MatrixLieSubalgebra::bracket_closure(a, p.basis()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(p.normalizer(), p.clone());
        let is_parabolic = matches!(is_parabolic(&p).unwrap(), ParabolicVerdict::Parabolic { .. });
        prop_assert!(is_parabolic);
    }

    #[test]
    fn tail_grammar_round_trips(
        coefs in proptest::collection::vec(-3i64..=3, 1..4),
        start in 1usize..5,
        extra in proptest::collection::vec((1usize..7, -2i64..=2), 0..3),
    ) {
        let pattern: Vec<String> = coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| format!("{c}e(i+{k})"))
            .collect();
        let mut parts = Vec::new();
        if !pattern.is_empty() {
            parts.push(format!("{} for i>={start}", pattern.join("+")));
        }
        for (k, c) in extra.iter().filter(|(_, c)| *c != 0) {
            parts.push(format!("{c}e({k})"));
        }
        let text = if parts.is_empty() { "0".to_string() } else { parts.join("; ") };
        let t: TailSubspace = text.replace("+-", "-").parse().unwrap();
        let back: TailSubspace = t.to_string().parse().unwrap();
        prop_assert_eq!(&back, &t);
        let sys = DirectSystem::gl(12);
        let lo = t.min_level().max(1);
        for n in lo..=12 {
            prop_assert_eq!(sys.realize(&t, n).unwrap(), sys.realize(&back, n).unwrap());
        }
    }
}

fn coordinate_span(ring: Ring, n: usize, set: u32) -> Subspace {
    let vs: Vec<Vec<finpar::exactlin::Scalar>> = (0..n)
        .filter(|k| set & (1 << k) != 0)
        .map(|k| {
            (0..n)
                .map(|l| finpar::exactlin::Scalar::from_int(ring, i64::from(l == k)))
                .collect()
        })
        .collect();
    Subspace::span(ring, n, &vs).unwrap()
}

/// Every chain of proper nonzero coordinate subsets of `{1..n}`, as bitmasks.
fn subset_chains(n: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let mut chains = vec![Vec::new()];
    let mut k = 0;
    while k < chains.len() {
        let last = chains[k].last().copied().unwrap_or(0);
        for s in 1..full {
            if s & last == last && s != last {
                let mut c = chains[k].clone();
                c.push(s);
                chains.push(c);
            }
        }
        k += 1;
    }
    chains
}

#[test]
fn coordinate_couples_are_taut_exactly_when_the_partner_is_the_perp_chain() {
    let ring = Ring::Rat;
    for n in 1..=3 {
        let pairing = finpar::exactlin::SesquiStructure::standard_pairing(ring, n);
        let full = (1u32 << n) - 1;
        let chains = subset_chains(n);
        for cv in &chains {
            let fv_members: Vec<Subspace> = cv.iter().map(|&s| coordinate_span(ring, n, s)).collect();
            let fv = flag_or_trivial(ring, n, &fv_members).unwrap();
            let mut perp: Vec<u32> = cv.iter().map(|&s| full & !s).collect();
            perp.reverse();
            for cw in &chains {
                let fw_members: Vec<Subspace> = cw.iter().map(|&s| coordinate_span(ring, n, s)).collect();
                let fw = flag_or_trivial(ring, n, &fw_members).unwrap();
                let taut = finpar::flags::is_taut_couple(&fv, &fw, &pairing).unwrap();
                assert_eq!(taut, *cw == perp, "n = {n}, {cv:?} against {cw:?}");
            }
        }
    }
}

#[test]
fn borel_witnesses_have_the_root_system_dimension() {
    // rank plus number of positive roots
    let expected = [
        ("GL(3)", 6),
        ("GL(4)", 10),
        ("SL(3)", 5),
        ("SP(2)", 6),
        ("SO(5)", 6),
        ("SO(6)", 9),
        ("SO(8)", 16),
    ];
    for (tag, dim) in expected {
        let a = named_ambient(tag).unwrap();
        assert_eq!(a.borel_dim(), dim, "{tag}");
        let f = finpar::corpus::ambient_coordinate_flags(&a).unwrap().remove(0);
        let p = MatrixLieSubalgebra::flag_stabilizer(a, &[&f]).unwrap();
        match is_parabolic(&p).unwrap() {
            ParabolicVerdict::Parabolic { certificate, .. } => {
                assert_eq!(certificate.witness.dim(), dim, "{tag}");
            }
            ParabolicVerdict::NotParabolic(o) => panic!("{tag}: {o:?}"),
        }
    }
}

#[test]
fn corpora_are_reproducible() {
    let a = named_ambient("SO(6)").unwrap();
    let one = Corpus::new(99).ambient_flags(&a, 5).unwrap();
    let two = Corpus::new(99).ambient_flags(&a, 5).unwrap();
    assert_eq!(one, two);
    let mut c = Corpus::new(99);
    let tail = (c.int(2), c.below(7));
    let mut d = Corpus::new(99);
    assert_eq!(tail, (d.int(2), d.below(7)));
}
