//! Prenex quantified boolean formulas with a CNF or DNF matrix, and two
//! independently coded brute-force evaluators.

use std::fmt;

use crate::element::Lit;
use crate::error::{Error, Result};

/// Largest number of quantified variables either evaluator accepts.
pub const EVAL_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    fn flip(self) -> Quantifier {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixForm {
    Cnf,
    Dnf,
}

impl fmt::Display for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixForm::Cnf => "cnf",
            MatrixForm::Dnf => "dnf",
        })
    }
}

/// `∃X ∀Y φ` or `∃X ∀Y ∃Z φ` over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantifiedFormula {
    num_vars: u32,
    blocks: Vec<Vec<u32>>,
    form: MatrixForm,
    matrix: Vec<Vec<Lit>>,
}

impl QuantifiedFormula {
    /// `blocks` alternate starting with an existential block; two or three
    /// blocks are accepted.
    pub fn new(num_vars: u32, blocks: Vec<Vec<u32>>, form: MatrixForm, matrix: Vec<Vec<Lit>>) -> Result<Self> {
        if !(2..=3).contains(&blocks.len()) {
            return Err(Error::PrefixMismatch(format!(
                "two or three quantifier blocks, found {}",
                blocks.len()
            )));
        }
        let mut owner = vec![None; num_vars as usize + 1];
        for (b, vars) in blocks.iter().enumerate() {
            for &v in vars {
                if v == 0 || v > num_vars {
                    return Err(Error::Precondition(format!("quantified variable {v} is out of range")));
                }
                if owner[v as usize].replace(b).is_some() {
                    return Err(Error::Precondition(format!("variable {v} is quantified twice")));
                }
            }
        }
        if let Some(l) = matrix.iter().flatten().find(|l| l.var() > num_vars || owner[l.var() as usize].is_none()) {
            return Err(Error::Precondition(format!("literal {l} has no quantifier")));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(QuantifiedFormula {
            num_vars,
            blocks,
            form,
            matrix,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn quantifier(&self, block: usize) -> Quantifier {
        if block % 2 == 0 {
            Quantifier::Exists
        } else {
            Quantifier::Forall
        }
    }

    pub fn form(&self) -> MatrixForm {
        self.form
    }

    /// Terms of a DNF matrix or clauses of a CNF matrix.
    pub fn matrix(&self) -> &[Vec<Lit>] {
        &self.matrix
    }

    /// Prefix and matrix shape, e.g. `∃∀ dnf`.
    pub fn shape(&self) -> String {
        let prefix: String = (0..self.blocks.len())
            .map(|b| match self.quantifier(b) {
                Quantifier::Exists => '∃',
                Quantifier::Forall => '∀',
            })
            .collect();
        format!("{prefix} {}", self.form)
    }

    pub(crate) fn expect_shape(&self, blocks: usize, form: MatrixForm) -> Result<()> {
        if self.blocks.len() == blocks && self.form == form {
            Ok(())
        } else {
            let want = if blocks == 2 { "∃∀" } else { "∃∀∃" };
            Err(Error::PrefixMismatch(format!("{want} {form}, found {}", self.shape())))
        }
    }

    fn quantified(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn check_cap(&self) -> Result<()> {
        let vars = self.quantified();
        if vars > EVAL_CAP {
            Err(Error::CapExceeded { vars, cap: EVAL_CAP })
        } else {
            Ok(())
        }
    }

    fn matrix_holds(&self, assignment: &[bool]) -> bool {
        let holds = |l: &Lit| l.holds(assignment);
        match self.form {
            MatrixForm::Cnf => self.matrix.iter().all(|c| c.iter().any(holds)),
            MatrixForm::Dnf => self.matrix.iter().any(|t| t.iter().all(holds)),
        }
    }
}

/// Literal-wise De Morgan: terms become clauses of negated literals, in order.
pub fn negate_dnf(terms: &[Vec<Lit>]) -> Vec<Vec<Lit>> {
    terms
        .iter()
        .map(|t| t.iter().map(|l| l.negate()).collect())
        .collect()
}

/// Truth value by enumerating each block's assignments in prefix order.
pub fn eval_qbf(phi: &QuantifiedFormula) -> Result<bool> {
    phi.check_cap()?;
    let mut assignment = vec![false; phi.num_vars as usize + 1];
    Ok(eval_block(phi, 0, &mut assignment))
}

fn eval_block(phi: &QuantifiedFormula, depth: usize, assignment: &mut [bool]) -> bool {
    let Some(vars) = phi.blocks.get(depth) else {
        return phi.matrix_holds(assignment);
    };
    let mut outcomes = (0..1u64 << vars.len()).map(|code| {
        for (j, &v) in vars.iter().enumerate() {
            assignment[v as usize] = code >> j & 1 == 1;
        }
        eval_block(phi, depth + 1, assignment)
    });
    match phi.quantifier(depth) {
        Quantifier::Exists => outcomes.any(|b| b),
        Quantifier::Forall => outcomes.all(|b| b),
    }
}

/// Truth value by splitting on one variable at a time and simplifying the
/// matrix after every assignment.
pub fn eval_qbf_recursive(phi: &QuantifiedFormula) -> Result<bool> {
    phi.check_cap()?;
    let order: Vec<(u32, Quantifier)> = phi
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(b, vars)| vars.iter().map(move |&v| (v, phi.quantifier(b))))
        .collect();
    // A DNF is evaluated as the negation of the CNF of its negation, with the
    // quantifiers dualised.
    let (clauses, negate) = match phi.form {
        MatrixForm::Cnf => (phi.matrix.clone(), false),
        MatrixForm::Dnf => (negate_dnf(&phi.matrix), true),
    };
    let order: Vec<_> = if negate {
        order.into_iter().map(|(v, q)| (v, q.flip())).collect()
    } else {
        order
    };
    Ok(split(&clauses, &order) != negate)
}

fn split(clauses: &[Vec<Lit>], order: &[(u32, Quantifier)]) -> bool {
    if clauses.is_empty() {
        return true;
    }
    if clauses.iter().any(Vec::is_empty) {
        return false;
    }
    let Some((&(var, q), rest)) = order.split_first() else {
        unreachable!("every matrix variable is quantified");
    };
    let branch = |value: bool| split(&assign(clauses, var, value), rest);
    match q {
        Quantifier::Exists => branch(false) || branch(true),
        Quantifier::Forall => branch(false) && branch(true),
    }
}

fn assign(clauses: &[Vec<Lit>], var: u32, value: bool) -> Vec<Vec<Lit>> {
    let truth = Lit::new(var, !value);
    clauses
        .iter()
        .filter(|c| !c.contains(&truth))
        .map(|c| c.iter().copied().filter(|l| l.var() != var).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(ls: &[i32]) -> Vec<Lit> {
        ls.iter().map(|&l| Lit::from_dimacs(l).unwrap()).collect()
    }

    fn formula(blocks: Vec<Vec<u32>>, form: MatrixForm, m: &[&[i32]]) -> QuantifiedFormula {
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        QuantifiedFormula::new(n, blocks, form, m.iter().map(|t| lits(t)).collect()).unwrap()
    }

    fn both(phi: &QuantifiedFormula) -> bool {
        let a = eval_qbf(phi).unwrap();
        assert_eq!(a, eval_qbf_recursive(phi).unwrap());
        a
    }

    #[test]
    fn exists_forall_cnf_with_a_covering_choice() {
        assert!(both(&formula(vec![vec![1], vec![2]], MatrixForm::Cnf, &[&[1, 2], &[1, -2]])));
    }

    #[test]
    fn exists_forall_dnf_examples() {
        assert!(both(&formula(vec![vec![1], vec![2]], MatrixForm::Dnf, &[&[1, 2], &[1, -2]])));
        assert!(!both(&formula(vec![vec![1], vec![2]], MatrixForm::Dnf, &[&[1, 2]])));
    }

    #[test]
    fn empty_matrices() {
        assert!(both(&formula(vec![vec![1], vec![2]], MatrixForm::Cnf, &[])));
        assert!(!both(&formula(vec![vec![1], vec![2]], MatrixForm::Dnf, &[])));
        assert!(!both(&formula(vec![vec![1], vec![2]], MatrixForm::Cnf, &[&[]])));
        assert!(both(&formula(vec![vec![1], vec![2]], MatrixForm::Dnf, &[&[]])));
    }

    #[test]
    fn unquantified_literal_is_rejected() {
        let err = QuantifiedFormula::new(3, vec![vec![1], vec![2]], MatrixForm::Cnf, vec![lits(&[3])]);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn one_block_is_a_prefix_mismatch() {
        let err = QuantifiedFormula::new(1, vec![vec![1]], MatrixForm::Cnf, vec![]);
        assert!(matches!(err, Err(Error::PrefixMismatch(_))));
    }

    #[test]
    fn oversized_formula_hits_the_cap() {
        let x: Vec<u32> = (1..=13).collect();
        let y: Vec<u32> = (14..=26).collect();
        let phi = QuantifiedFormula::new(26, vec![x, y], MatrixForm::Cnf, vec![]).unwrap();
        assert!(matches!(eval_qbf(&phi), Err(Error::CapExceeded { vars: 26, .. })));
        assert!(matches!(eval_qbf_recursive(&phi), Err(Error::CapExceeded { .. })));
    }
}
