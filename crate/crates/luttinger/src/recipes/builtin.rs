//! The built-in catalog. Each entry expands to recipe text for concrete
//! parameter values; repeated sums are unrolled.

use super::text::parse_recipe;
use super::{bind_params, ParamDecl, Params, Recipe, RecipeError};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::fmt::Write;

pub struct BuiltinRecipe {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: Vec<ParamDecl>,
    expand: fn(&Params, &mut Script) -> Result<(), String>,
}

impl BuiltinRecipe {
    /// Recipe text at the given parameter values.
    pub fn text(&self, params: &Params) -> Result<String, RecipeError> {
        let mut s = Script::default();
        writeln!(s.0, "recipe {}", self.name).unwrap();
        for p in &self.params {
            write!(s.0, "param {} default {}", p.name, params[&p.name]).unwrap();
            if let Some((lo, hi)) = &p.range {
                write!(s.0, " range {lo}..{hi}").unwrap();
            }
            s.0.push('\n');
        }
        (self.expand)(params, &mut s).map_err(RecipeError::BadParams)?;
        Ok(s.0)
    }
}

#[derive(Default)]
pub(crate) struct Script(String);

impl Script {
    fn line(&mut self, l: impl AsRef<str>) {
        self.0.push_str(l.as_ref());
        self.0.push('\n');
    }

    fn surgery(&mut self, var: &str, torus: &str, p: &str, q: &str, dir: char) {
        let d = if dir == 'm' { "m^1 l^0" } else { "m^0 l^1" };
        self.line(format!("surgery {var}.{torus} p {p} q {q} dir {d}"));
    }

    /// Block Z with the first five surgeries: complement group generated by `y`.
    fn x0(&mut self, v: &str) {
        self.line(format!("block Z as {v}"));
        self.surgery(v, "T1'", "1", "1", 'm');
        self.surgery(v, "T1", "-1", "1", 'm');
        self.surgery(v, "T2", "-1", "1", 'l');
        self.surgery(v, "T2'", "1", "1", 'l');
        self.surgery(v, "T3", "-1", "1", 'l');
    }

    /// All six surgeries, `F` left open.
    fn x(&mut self, v: &str) {
        self.x0(v);
        self.surgery(v, "T4", "-1", "1", 'm');
    }

    /// `X0` with `F` filled and `T4` exported for torus sums.
    fn x1(&mut self, v: &str) {
        self.x0(v);
        self.line(format!("fill {v}.F"));
        self.line(format!("trust {v}.T4"));
    }

    /// `X` summed into `M`, then two surgeries; `T3`, `T4` left open.
    fn b(&mut self, v: &str) {
        let k = format!("{v}x");
        self.x(&k);
        self.line(format!("block M as {v}"));
        self.line(format!("sum2 {k}.F {v}.F map identity4 quotient"));
        self.surgery(v, "T1", "-1", "1", 'm');
        self.surgery(v, "T2", "-1", "1", 'm');
    }

    /// `B` with both tori exported.
    fn b_exported(&mut self, v: &str) {
        self.b(v);
        self.line(format!("trust {v}.T3"));
        self.line(format!("trust {v}.T4"));
    }
}

fn small(p: &Params, k: &str) -> Result<usize, String> {
    p[k].to_usize().ok_or_else(|| format!("{k} must be non-negative"))
}

fn seven(_: &Params, s: &mut Script) -> Result<(), String> {
    s.line("block W1 as S");
    s.line("block W2 as U");
    s.line("sum2 S.F1 U.F2 map identity4 quotient");
    s.surgery("U", "T1'", "-1", "1", 'm');
    s.surgery("U", "T2'", "-1", "1", 'm');
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 10 -6");
    s.line("assert freedman 1 7");
    Ok(())
}

fn five(_: &Params, s: &mut Script) -> Result<(), String> {
    s.line("block W1 as S");
    s.line("block M as V");
    s.line("sum2 S.F1 V.F map theorem-five quotient");
    s.surgery("V", "T1", "-1", "1", 'm');
    s.surgery("V", "T2", "-1", "1", 'l');
    s.surgery("V", "T3", "-1", "1", 'l');
    s.surgery("V", "T4", "-1", "1", 'm');
    s.line("fill V.F");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 8 -4");
    s.line("assert freedman 1 5");
    Ok(())
}

fn cool(_: &Params, s: &mut Script) -> Result<(), String> {
    s.x("X");
    s.line("fill X.F");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 6 -2");
    s.line("assert freedman 1 3");
    Ok(())
}

fn yfamily(_: &Params, s: &mut Script) -> Result<(), String> {
    s.x0("X");
    s.surgery("X", "T4", "-n", "1", 'm');
    s.line("fill X.F");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 6 -2");
    s.line("assert freedman 1 3");
    Ok(())
}

fn zz(_: &Params, s: &mut Script) -> Result<(), String> {
    s.x1("X");
    s.line("assert pi1 infinite-cyclic");
    s.line("assert h1 sum(0)");
    s.line("assert e_sigma 6 -2");
    s.line("assert word_trivial a2");
    s.line("assert pushoff X.T4 (1,t1,1) with t1=y");
    Ok(())
}

fn b1(_: &Params, s: &mut Script) -> Result<(), String> {
    s.line("block Z as X");
    s.surgery("X", "T1'", "1", "1", 'm');
    s.surgery("X", "T1", "-1", "1", 'm');
    s.surgery("X", "T2", "-1", "1", 'l');
    s.surgery("X", "T2'", "1", "1", 'l');
    s.line("fill X.F");
    s.line("fill X.T3");
    s.line("fill X.T4");
    s.line("assert pi1 free-abelian(2)");
    s.line("assert e_sigma 6 -2");
    s.line("assert word_trivial [a2,y]");
    s.line("assert pushoff X.T3 (1,1,t2) with t1=y,t2=a2");
    s.line("assert pushoff X.T4 (1,t1,t2) with t1=y,t2=a2");
    Ok(())
}

fn baby(_: &Params, s: &mut Script) -> Result<(), String> {
    s.b("B");
    s.line("fill B.T3");
    s.line("fill B.T4");
    s.line("fill B.F");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 10 -2");
    s.line("assert freedman 3 5");
    Ok(())
}

fn b31(_: &Params, s: &mut Script) -> Result<(), String> {
    s.x("X");
    s.line("block W2 as U");
    s.line("sum2 X.F U.F2 map identity4 quotient");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 12 -4");
    s.line("assert freedman 3 7");
    Ok(())
}

fn b32(_: &Params, s: &mut Script) -> Result<(), String> {
    s.x("X");
    s.line("block W1 as U");
    s.line("sum2 X.F U.F1 map identity4 quotient");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 14 -6");
    s.line("assert freedman 3 9");
    Ok(())
}

fn b51(_: &Params, s: &mut Script) -> Result<(), String> {
    s.x("X");
    s.x("Y");
    s.line("sum2 X.F Y.F map identity4 quotient");
    s.line("fill Y.F");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 16 -4");
    s.line("assert freedman 5 9");
    Ok(())
}

fn family(p: &Params, s: &mut Script) -> Result<(), String> {
    let (m, n) = (small(p, "m")?, small(p, "n")?);
    s.x("X");
    for i in 1..=m {
        s.line(format!("block W1 as P{i}"));
        s.line(format!("sum2 P{i}.F1 X.F map identity4 quotient"));
    }
    for j in 1..=n {
        s.line(format!("block W2 as Q{j}"));
        s.line(format!("sum2 Q{j}.F2 X.F map identity4 quotient"));
    }
    s.line("fill X.F");
    // odd by the square -1 surface argument; no form record survives the sums
    s.line("assume odd X");
    s.line("assert pi1 trivial");
    s.line("assert e_sigma 6+8*m+6*n -2*(1+2*m+n)");
    s.line("assert freedman 1+2*m+2*n 3+6*m+4*n");
    s.line("assert arith e[cool]+m*(e[W1]+4)+n*(e[W2]+4) == 6+8*m+6*n");
    s.line("assert arith sigma[cool]+m*sigma[W1]+n*sigma[W2] == -2*(1+2*m+n)");
    s.line("assert arith (6+8*m+6*n-2*(1+2*m+n)-2)/2 == 1+2*m+2*n");
    s.line("assert arith (6+8*m+6*n+2*(1+2*m+n)-2)/2 == 3+6*m+4*n");
    Ok(())
}

fn z3_steps(s: &mut Script) {
    s.line("block Z as X");
    s.surgery("X", "T1'", "1", "1", 'm');
    s.surgery("X", "T1", "-1", "1", 'l');
    s.surgery("X", "T2'", "1", "1", 'l');
}

fn z3(_: &Params, s: &mut Script) -> Result<(), String> {
    z3_steps(s);
    s.line("fill X.F");
    s.line("fill X.T2");
    s.line("fill X.T3");
    s.line("fill X.T4");
    s.line("assert pi1 free-abelian(3)");
    s.line("assert h1 sum(0,0,0)");
    s.line("assert e_sigma 6 -2");
    Ok(())
}

fn abelian(_: &Params, s: &mut Script) -> Result<(), String> {
    z3_steps(s);
    // surviving generators y, x, a2 pick up orders r, q, p
    s.surgery("X", "T2", "1", "r", 'm');
    s.surgery("X", "T3", "1", "q", 'm');
    s.surgery("X", "T4", "1", "p", 'l');
    s.line("fill X.F");
    s.line("assert pi1 abelian(p,q,r)");
    s.line("assert h1 sum(p,q,r)");
    s.line("assert e_sigma 6 -2");
    Ok(())
}

fn free(_: &Params, s: &mut Script) -> Result<(), String> {
    s.b_exported("B");
    s.line("block twist(n) as L");
    s.line("sumT B.T3 L.T0 map inline(s,t)");
    s.line("assert pi1 free(n)");
    s.line("assert e_sigma 10 -2");
    Ok(())
}

fn fibered(p: &Params, s: &mut Script) -> Result<(), String> {
    let n = small(p, "n")?;
    s.x1("X");
    s.line("block twist(n) as L");
    // the circle factor s goes to the dead push-off
    s.line("sumT X.T4 L.T0 map inline(t,s)");
    s.line("assert e_sigma 6 -2");
    s.line(format!("assert h1 sum({})", vec!["0"; n + 1].join(",")));
    Ok(())
}

fn fifty(_: &Params, s: &mut Script) -> Result<(), String> {
    s.line("assert arith e[10baby]+(g+r)*e[ZZ] == 10+6*(g+r)");
    s.line("assert arith sigma[10baby]+(g+r)*sigma[ZZ] == -2-2*(g+r)");
    Ok(())
}

fn odd(_: &Params, s: &mut Script) -> Result<(), String> {
    s.line("assert arith e[sym2(n)]+e[ZZ] == 9-5*n+2*n^2");
    s.line("assert arith sigma[sym2(n)]+sigma[ZZ] == -1-n");
    Ok(())
}

fn genabelian(p: &Params, s: &mut Script) -> Result<(), String> {
    let n = small(p, "n")?;
    if n % 2 != 0 {
        return Err(format!("n must be even, got {n}"));
    }
    let g = n / 2 + 3;
    s.line("block sym2(n/2+3) as N");
    for (i, (t, a, b)) in [("Ta1b2", "a1", "b2"), ("Tb1b3", "b1", "b3"), ("Ta2a3", "a2", "a3")].iter().enumerate() {
        let v = format!("B{}", i + 1);
        s.b_exported(&v);
        s.line(format!("sumT {v}.T3 N.{t} map inline({a},{b})"));
    }
    let mut i = 0;
    for j in 4..=g {
        for (kind, gen) in [("x", "a"), ("y", "b")] {
            i += 1;
            let d = &p[&format!("d{i}")];
            let v = format!("P{i}");
            s.x1(&v);
            s.line(format!("sumT {v}.T4 N.T{kind}{j}{gen}{j} map inline({gen}{j}^-1,a1 {gen}{j}^{d})"));
        }
    }
    let ds: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
    s.line(format!("assert h1 sum({})", ds.join(",")));
    s.line("assert e_sigma n^2/2+19*n/2+36 -5*n/2-8");
    s.line("assert arith 12*(n/2+3)-6+(2*(n/2+3)^2-5*(n/2+3)+3) == n^2/2+19*n/2+36");
    s.line("assert arith e[sym2(n/2+3)]+3*e[10baby]+n*e[ZZ] == n^2/2+19*n/2+36");
    s.line("assert arith sigma[sym2(n/2+3)]+3*sigma[10baby]+n*sigma[ZZ] == -5*n/2-8");
    Ok(())
}

fn p(name: &str, default: i64, lo: i64, hi: i64) -> ParamDecl {
    ParamDecl::new(name, default, Some((lo, hi)))
}

/// The catalog, in a fixed order.
pub fn builtin_recipes() -> Vec<BuiltinRecipe> {
    let entry = |name, summary, params, expand| BuiltinRecipe { name, summary, params, expand };
    let mut gen_params = vec![p("n", 2, 2, 6)];
    for (i, d) in [2, 3, 4, 5, 6, 7].into_iter().enumerate() {
        gen_params.push(p(&format!("d{}", i + 1), d, -1000, 1000));
    }
    vec![
        entry("seven", "W1 and W2 summed, two surgeries: simply connected, e=10, sigma=-6", vec![], seven as fn(&Params, &mut Script) -> Result<(), String>),
        entry("five", "W1 and M summed, four surgeries: simply connected, e=8, sigma=-4", vec![], five),
        entry("cool", "six surgeries on Z: simply connected, e=6, sigma=-2", vec![], cool),
        entry("Yfamily", "five surgeries on Z, then -n/1 on T4: simply connected for every n", vec![p("n", 2, -1000, 1000)], yfamily),
        entry("ZZ", "five surgeries on Z: infinite cyclic, T4 exported", vec![], zz),
        entry("B1", "four surgeries on Z: free abelian of rank 2", vec![], b1),
        entry("10baby", "cool summed into M, two surgeries: simply connected, e=10, sigma=-2", vec![], baby),
        entry("b31", "cool summed into W2: simply connected, e=12, sigma=-4", vec![], b31),
        entry("b32", "cool summed into W1: simply connected, e=14, sigma=-6", vec![], b32),
        entry("b51", "two copies of cool summed: simply connected, e=16, sigma=-4", vec![], b51),
        entry("family", "cool plus m copies of W1 and n copies of W2", vec![p("m", 1, 0, 8), p("n", 1, 0, 8)], family),
        entry("Z3", "three surgeries on Z: free abelian of rank 3", vec![], z3),
        entry("abelian", "Z3 plus three more surgeries: Z/p + Z/q + Z/r", vec![p("p", 2, -1000, 1000), p("q", 3, -1000, 1000), p("r", 4, -1000, 1000)], abelian),
        entry("free", "twist mapping torus times a circle, summed with B: free of rank n", vec![p("n", 2, 1, 8)], free),
        entry("fibered", "twist mapping torus times a circle, summed with the ZZ block", vec![p("n", 1, 1, 6)], fibered),
        entry("fifty", "arithmetic of e and sigma for the fifty percent construction", vec![p("g", 1, 0, 1000), p("r", 1, 0, 1000)], fifty),
        entry("genabelian", "homology-level construction with H1 = Z/d1 + ... + Z/dn", gen_params, genabelian),
        entry("odd", "arithmetic of e and sigma for Sym2 summed with the ZZ block", vec![p("n", 2, 1, 1000)], odd),
    ]
}

pub fn find_builtin(name: &str) -> Option<BuiltinRecipe> {
    builtin_recipes().into_iter().find(|b| b.name == name)
}

/// Expand a built-in at defaults overridden by `overrides`.
pub fn instantiate(name: &str, overrides: &[(String, BigInt)]) -> Result<Recipe, RecipeError> {
    let b = find_builtin(name).ok_or_else(|| RecipeError::UnknownRecipe(name.to_string()))?;
    let skeleton = Recipe { name: name.to_string(), params: b.params.clone(), steps: vec![], assertions: vec![] };
    let params = bind_params(&skeleton, overrides)?;
    Ok(parse_recipe(&b.text(&params)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recipes::serialize_recipe;

    #[test]
    fn catalog_has_every_entry() {
        let all = builtin_recipes();
        assert!(all.len() >= 16);
        let mut names: Vec<&str> = all.iter().map(|b| b.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn every_builtin_expands_and_round_trips() {
        for b in builtin_recipes() {
            let r = instantiate(b.name, &[]).unwrap();
            assert_eq!(parse_recipe(&serialize_recipe(&r)).unwrap(), r, "{}", b.name);
        }
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(matches!(
            instantiate("free", &[("n".into(), 0.into())]),
            Err(RecipeError::OutOfRange { .. })
        ));
        assert!(matches!(instantiate("free", &[("k".into(), 1.into())]), Err(RecipeError::UnknownParam(_))));
        assert!(matches!(instantiate("genabelian", &[("n".into(), 3.into())]), Err(RecipeError::BadParams(_))));
        assert!(matches!(instantiate("nope", &[]), Err(RecipeError::UnknownRecipe(_))));
    }

    #[test]
    fn family_unrolls_its_sums() {
        let r = instantiate("family", &[("m".into(), 2.into()), ("n".into(), 3.into())]).unwrap();
        let sums = r.steps.iter().filter(|s| matches!(s, crate::recipes::Step::Sum2 { .. })).count();
        assert_eq!(sums, 5);
    }
}
