use evalexpr::{
    build_operator_tree, ContextWithMutableFunctions, ContextWithMutableVariables, Function,
    HashMapContext, Value,
};

use crate::error::{Error, Result};
use crate::{Algo, Problem};

/// Evaluation budget of a run.
///
/// `auto` picks `50 m (1 + ln m)` for the classical problem, `50 w_max m` for
/// weighted RLS and `50 (OPT m + m^2)` for the weighted EA. Expressions may
/// use `m`, `n`, `mmax`, `wmax`, `opt`, `e`, and the functions `ln`, `log2`,
/// `sqrt`, `exp`, e.g. `50*m*(1+ln(m))`.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum BudgetRule {
    #[default]
    Auto,
    Expr(String),
}

/// Instance quantities a budget may depend on.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BudgetVars {
    pub m: usize,
    pub n: usize,
    pub m_max: usize,
    pub w_max: u64,
    pub opt: Option<u64>,
}

fn unary(f: fn(f64) -> f64) -> Function {
    Function::new(move |arg| Ok(Value::Float(f(arg.as_number()?))))
}

impl BudgetRule {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "auto" {
            return Ok(BudgetRule::Auto);
        }
        build_operator_tree(text).map_err(|e| Error::Invalid(format!("bad budget `{text}`: {e}")))?;
        Ok(BudgetRule::Expr(text.to_string()))
    }

    pub fn needs_opt(&self, problem: Problem, algo: Algo) -> bool {
        match self {
            BudgetRule::Auto => problem == Problem::Weighted && algo == Algo::Ea,
            BudgetRule::Expr(text) => build_operator_tree(text)
                .map(|tree| tree.iter_variable_identifiers().any(|id| id == "opt"))
                .unwrap_or(false),
        }
    }

    pub fn evaluate(&self, problem: Problem, algo: Algo, vars: &BudgetVars) -> Result<u64> {
        let m = vars.m.max(1) as f64;
        let value = match self {
            BudgetRule::Auto => match (problem, algo) {
                (Problem::Classic, _) => 50.0 * m * (1.0 + m.ln()),
                (Problem::Weighted, Algo::Rls) => 50.0 * vars.w_max.max(1) as f64 * m,
                (Problem::Weighted, Algo::Ea) => {
                    let opt = vars.opt.ok_or_else(|| Error::Invalid("budget needs the optimum".into()))?;
                    50.0 * (opt as f64 * m + m * m)
                }
            },
            BudgetRule::Expr(text) => self.eval_expr(text, vars)?,
        };
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Invalid(format!("budget evaluates to {value}")));
        }
        Ok((value.ceil() as u64).max(1))
    }

    fn eval_expr(&self, text: &str, vars: &BudgetVars) -> Result<f64> {
        let mut ctx = HashMapContext::new();
        let bad = |e: evalexpr::EvalexprError| Error::Invalid(format!("budget `{text}`: {e}"));
        let mut set = |name: &str, v: f64| ctx.set_value(name.into(), Value::Float(v)).map_err(bad);
        set("m", vars.m as f64)?;
        set("n", vars.n as f64)?;
        set("mmax", vars.m_max as f64)?;
        set("wmax", vars.w_max as f64)?;
        set("e", std::f64::consts::E)?;
        if let Some(opt) = vars.opt {
            set("opt", opt as f64)?;
        }
        for (name, f) in [("ln", f64::ln as fn(f64) -> f64), ("log2", f64::log2), ("sqrt", f64::sqrt), ("exp", f64::exp)] {
            ctx.set_function(name.into(), unary(f)).map_err(bad)?;
        }
        evalexpr::eval_number_with_context(text, &ctx).map_err(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(m: usize) -> BudgetVars {
        BudgetVars { m, n: m + 1, m_max: 2 * m, w_max: 8, opt: Some(10) }
    }

    #[test]
    fn auto_rules() {
        let b = BudgetRule::Auto;
        let expect = (50.0 * 64.0 * (1.0 + 64f64.ln())).ceil() as u64;
        assert_eq!(b.evaluate(Problem::Classic, Algo::Ea, &vars(64)).unwrap(), expect);
        assert_eq!(b.evaluate(Problem::Weighted, Algo::Rls, &vars(64)).unwrap(), 50 * 8 * 64);
        assert_eq!(b.evaluate(Problem::Weighted, Algo::Ea, &vars(64)).unwrap(), 50 * (10 * 64 + 64 * 64));
        assert!(b.needs_opt(Problem::Weighted, Algo::Ea));
        assert!(!b.needs_opt(Problem::Weighted, Algo::Rls));
        let mut v = vars(4);
        v.opt = None;
        assert!(b.evaluate(Problem::Weighted, Algo::Ea, &v).is_err());
    }

    #[test]
    fn expressions() {
        let b = BudgetRule::parse("50*m*(1+ln(m))").unwrap();
        let expect = (50.0 * 64.0 * (1.0 + 64f64.ln())).ceil() as u64;
        assert_eq!(b.evaluate(Problem::Classic, Algo::Ea, &vars(64)).unwrap(), expect);
        assert_eq!(BudgetRule::parse("1000").unwrap().evaluate(Problem::Classic, Algo::Ea, &vars(3)).unwrap(), 1000);
        let with_opt = BudgetRule::parse("3*(2*e*opt*m + 10*e^2*m^2)").unwrap();
        assert!(with_opt.needs_opt(Problem::Weighted, Algo::Ea));
        assert!(with_opt.evaluate(Problem::Weighted, Algo::Ea, &vars(8)).unwrap() > 0);
        assert!(BudgetRule::parse("50*(").is_err());
        assert!(BudgetRule::parse("0-5").unwrap().evaluate(Problem::Classic, Algo::Ea, &vars(3)).is_err());
    }
}
