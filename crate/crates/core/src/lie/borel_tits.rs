//! The comparison `Phi: C^RBS -> O^op` between the flag category with graded
//! links and the opposite orbit category on unipotent radicals, together with
//! `Psi: C^BS -> T^op` into the opposite transport category and the square
//! relating them.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{
    orbit_category, radicals_match_flags, transport_category, FlagPoset, LieError,
    RadicalCollection, RADICAL_SCAN_LIMIT,
};
use crate::category::{build_category, quotient_functor, Category, Functor, IsoWitness, MorphId};
use crate::group::{Elem, Subgroup};

/// First pair of flags where the three descriptions of the transporter set disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationOneFailure {
    pub src: usize,
    pub dst: usize,
    pub element: Elem,
}

/// All the categories and functors of the comparison for one flag poset.
#[derive(Clone, Debug)]
pub struct BorelTits {
    pub flags: FlagPoset,
    pub parabolics: Vec<Subgroup>,
    pub radicals: RadicalCollection,
    /// Graded links.
    pub crbs: Arc<Category>,
    /// Trivial links.
    pub cbs: Arc<Category>,
    pub orbit: Arc<Category>,
    pub orbit_op: Arc<Category>,
    pub transport: Arc<Category>,
    pub transport_op: Arc<Category>,
    /// `C^BS -> C^RBS`.
    pub quotient: Functor,
    /// `C^RBS -> O^op`, `[g] -> [g]`.
    pub phi: Functor,
    /// `C^BS -> T^op`, `g -> g^-1`.
    pub psi: Functor,
    /// `T^op -> O^op`, the opposite of `T -> O`, `g -> [g^-1]`.
    pub tau_op: Functor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelTitsReport {
    pub n: usize,
    pub p: u32,
    pub group_order: usize,
    pub flag_count: usize,
    pub radical_count: usize,
    pub pairs_checked: usize,
    /// `{g : O_p(Q)^g <= O_p(P)} = {g : g P g^-1 <= Q} = {g : g.F <= F'}` for every pair.
    pub equation_one: Result<(), EquationOneFailure>,
    pub phi_functor: Result<(), String>,
    pub psi_functor: Result<(), String>,
    pub tau_functor: Result<(), String>,
    pub phi_isomorphism: IsoWitness,
    /// `Phi . quotient = tau^op . Psi`; on failure, the first C^BS morphism where they differ.
    pub square: Result<(), MorphId>,
    /// Flags whose link normaliser differs from the parabolic.
    pub normalizer_failures: Vec<usize>,
    /// Flags whose graded link differs from `O_p` of the parabolic.
    pub link_op_failures: Vec<usize>,
    /// Radical scan against the graded links, when `|G|` is small enough.
    pub radical_scan: Option<bool>,
}

impl BorelTitsReport {
    pub fn passed(&self) -> bool {
        self.equation_one.is_ok()
            && self.phi_functor.is_ok()
            && self.psi_functor.is_ok()
            && self.tau_functor.is_ok()
            && self.phi_isomorphism.holds()
            && self.square.is_ok()
            && self.normalizer_failures.is_empty()
            && self.link_op_failures.is_empty()
            && self.radical_scan != Some(false)
    }

    pub fn to_json(&self) -> Value {
        let check = |r: &Result<(), String>| match r {
            Ok(()) => json!({"pass": true}),
            Err(e) => json!({"pass": false, "detail": e}),
        };
        json!({
            "n": self.n,
            "p": self.p,
            "group_order": self.group_order,
            "flags": self.flag_count,
            "radicals": self.radical_count,
            "pairs_checked": self.pairs_checked,
            "equation_one": match &self.equation_one {
                Ok(()) => json!({"pass": true}),
                Err(f) => json!({"pass": false, "src": f.src, "dst": f.dst, "element": f.element}),
            },
            "phi_functor": check(&self.phi_functor),
            "psi_functor": check(&self.psi_functor),
            "tau_functor": check(&self.tau_functor),
            "isomorphism": self.phi_isomorphism.holds(),
            "isomorphism_witness": self.phi_isomorphism.to_string(),
            "square": match self.square {
                Ok(()) => json!({"pass": true}),
                Err(m) => json!({"pass": false, "morphism": m}),
            },
            "normalizer_failures": self.normalizer_failures,
            "link_op_failures": self.link_op_failures,
            "radical_scan": self.radical_scan,
            "pass": self.passed(),
        })
    }
}

impl BorelTits {
    pub fn new(flags: FlagPoset) -> Result<BorelTits, LieError> {
        let p = flags.p();
        let poset = flags.gposet();
        let crbs = Arc::new(build_category(poset)?);
        let cbs = Arc::new(build_category(&poset.with_trivial_links())?);
        let parabolics: Vec<Subgroup> = (0..flags.len()).map(|i| flags.parabolic(i)).collect();
        let labels = poset
            .items()
            .iter()
            .map(|name| format!("O_p[{name}]"))
            .collect();
        let links = (0..flags.len())
            .map(|i| flags.graded_link(i).clone())
            .collect();
        let radicals = RadicalCollection::new(p, labels, links)?;
        let orbit = Arc::new(orbit_category(&radicals)?);
        let orbit_op = Arc::new(orbit.opposite()?);
        let transport = Arc::new(transport_category(&radicals)?);
        let transport_op = Arc::new(transport.opposite()?);
        let group = flags.group().clone();
        let identity_objects: Vec<usize> = (0..flags.len()).collect();

        let quotient = quotient_functor(&cbs, &crbs)?;
        // A class lookup that fails leaves an out-of-range id, which `check` reports.
        let missing = usize::MAX;
        let phi = Functor {
            source: crbs.clone(),
            target: orbit_op.clone(),
            on_objects: identity_objects.clone(),
            on_morphisms: crbs
                .morphisms()
                .iter()
                .map(|m| orbit_op.class_of(m.src, m.dst, m.rep).unwrap_or(missing))
                .collect(),
        };
        let psi = Functor {
            source: cbs.clone(),
            target: transport_op.clone(),
            on_objects: identity_objects.clone(),
            on_morphisms: cbs
                .morphisms()
                .iter()
                .map(|m| {
                    transport_op
                        .class_of(m.src, m.dst, group.inv(m.rep))
                        .unwrap_or(missing)
                })
                .collect(),
        };
        let tau_op = Functor {
            source: transport_op.clone(),
            target: orbit_op.clone(),
            on_objects: identity_objects,
            on_morphisms: transport_op
                .morphisms()
                .iter()
                .map(|m| {
                    orbit_op
                        .class_of(m.src, m.dst, group.inv(m.rep))
                        .unwrap_or(missing)
                })
                .collect(),
        };
        Ok(BorelTits {
            flags,
            parabolics,
            radicals,
            crbs,
            cbs,
            orbit,
            orbit_op,
            transport,
            transport_op,
            quotient,
            phi,
            psi,
            tau_op,
        })
    }

    /// Compares the three transporter descriptions for flags `src`, `dst`.
    fn equation_one_at(&self, src: usize, dst: usize) -> Result<(), EquationOneFailure> {
        let poset = self.flags.gposet();
        let group = self.flags.group();
        let (link_p, link_q) = (self.flags.graded_link(src), self.flags.graded_link(dst));
        let (par_p, par_q) = (&self.parabolics[src], &self.parabolics[dst]);
        for g in group.elements() {
            let by_radicals = link_q.conjugates_into(group.inv(g), link_p);
            let by_parabolics = par_p.conjugates_into(g, par_q);
            let by_flags = poset.leq(poset.act(g, src), dst);
            if by_radicals != by_parabolics || by_parabolics != by_flags {
                return Err(EquationOneFailure {
                    src,
                    dst,
                    element: g,
                });
            }
        }
        Ok(())
    }

    pub fn report(&self) -> BorelTitsReport {
        let m = self.flags.len();
        let mut equation_one = Ok(());
        'pairs: for src in 0..m {
            for dst in 0..m {
                if let Err(e) = self.equation_one_at(src, dst) {
                    equation_one = Err(e);
                    break 'pairs;
                }
            }
        }
        let as_string =
            |r: Result<(), crate::category::FunctorViolation>| r.map_err(|v| v.to_string());
        let phi_functor = as_string(self.phi.check());
        let phi_isomorphism = if phi_functor.is_ok() {
            self.phi.is_isomorphism()
        } else {
            IsoWitness::ObjectsNotBijective
        };
        let psi_functor = as_string(self.psi.check());
        let tau_functor = as_string(self.tau_op.check());
        let square = if phi_functor.is_ok() && psi_functor.is_ok() && tau_functor.is_ok() {
            let left = self.quotient.then(&self.phi);
            let right = self.psi.then(&self.tau_op);
            match (0..self.cbs.num_morphisms())
                .find(|&f| left.on_morphisms[f] != right.on_morphisms[f])
            {
                None => Ok(()),
                Some(f) => Err(f),
            }
        } else {
            Err(0)
        };
        let normalizer_failures = (0..m)
            .filter(|&i| !self.flags.verify_normalizer_is_parabolic(i))
            .collect();
        let link_op_failures = (0..m)
            .filter(|&i| !self.flags.verify_link_is_op(i))
            .collect();
        let radical_scan = (self.flags.group().order() <= RADICAL_SCAN_LIMIT)
            .then(|| radicals_match_flags(&self.flags).unwrap_or(false));
        BorelTitsReport {
            n: self.flags.n(),
            p: self.flags.p(),
            group_order: self.flags.group().order(),
            flag_count: m,
            radical_count: self.radicals.len(),
            pairs_checked: m * m,
            equation_one,
            phi_functor,
            psi_functor,
            tau_functor,
            phi_isomorphism,
            square,
            normalizer_failures,
            link_op_failures,
            radical_scan,
        }
    }
}
