//! Named extensions `1 → N → G → Q → 1` and the module-spec mini language.

use std::fmt;
use std::sync::Arc;

use extcohom_core::abelian::FgAbelianGroup;
use extcohom_core::ambient::AmbientExtension;
use extcohom_core::group::{center, FiniteGroup};
use extcohom_core::matrix::IntMatrix;
use extcohom_core::module::GModule;
use num_bigint::BigInt;

use crate::error::{Result, WorkbenchError};

/// Largest group order a preset may produce.
pub const MAX_PRESET_ORDER: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `0 → Z_n → Z_{nm} → Z_m → 0`
    Cyclic { n: usize, m: usize },
    /// Dihedral group of order `2n` over its rotations.
    Dihedral(usize),
    /// Quaternions over their center.
    Quaternion8,
    /// `S_3` over `A_3`.
    Symmetric3,
    /// Heisenberg group over `Z/p` over its center.
    HeisenbergMod(usize),
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Cyclic { n, m } => write!(f, "cyclic({n},{m})"),
            Preset::Dihedral(n) => write!(f, "dihedral({n})"),
            Preset::Quaternion8 => write!(f, "quaternion8"),
            Preset::Symmetric3 => write!(f, "symmetric3"),
            Preset::HeisenbergMod(p) => write!(f, "heisenberg_mod({p})"),
        }
    }
}

fn parse_params(s: &str) -> Result<(String, Vec<usize>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s.to_string(), Vec::new()));
    };
    let close =
        s.strip_suffix(')').ok_or_else(|| WorkbenchError::BadParams(format!("unbalanced parentheses in `{s}`")))?;
    let params = close[open + 1..]
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| WorkbenchError::BadParams(format!("`{p}` is not a parameter"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((s[..open].trim().to_string(), params))
}

impl Preset {
    /// Parses `cyclic(n,m)`, `dihedral(n)`, `quaternion8`, `symmetric3`, `heisenberg_mod(p)`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, params) = parse_params(s)?;
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(WorkbenchError::BadParams(format!("`{name}` takes {k} parameter(s), got {}", params.len())))
            }
        };
        let preset = match name.as_str() {
            "cyclic" => {
                arity(2)?;
                Preset::Cyclic { n: params[0], m: params[1] }
            }
            "dihedral" => {
                arity(1)?;
                Preset::Dihedral(params[0])
            }
            "quaternion8" => {
                arity(0)?;
                Preset::Quaternion8
            }
            "symmetric3" => {
                arity(0)?;
                Preset::Symmetric3
            }
            "heisenberg_mod" => {
                arity(1)?;
                Preset::HeisenbergMod(params[0])
            }
            _ => return Err(WorkbenchError::UnknownPreset(name)),
        };
        preset.validate()?;
        Ok(preset)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Preset::Cyclic { n, m } => n >= 1 && m >= 1 && n * m <= MAX_PRESET_ORDER,
            Preset::Dihedral(n) => n >= 2 && 2 * n <= MAX_PRESET_ORDER,
            Preset::HeisenbergMod(p) => p >= 2 && p * p * p <= MAX_PRESET_ORDER,
            Preset::Quaternion8 | Preset::Symmetric3 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(WorkbenchError::BadParams(format!("parameters out of range for {self}")))
        }
    }

    pub fn group(&self) -> FiniteGroup {
        match *self {
            Preset::Cyclic { n, m } => FiniteGroup::cyclic(n * m),
            Preset::Dihedral(n) => FiniteGroup::dihedral(n),
            Preset::Quaternion8 => FiniteGroup::quaternion8(),
            Preset::Symmetric3 => FiniteGroup::symmetric3(),
            Preset::HeisenbergMod(p) => FiniteGroup::heisenberg(p),
        }
    }

    /// Named generators of `G` used by module specs.
    pub fn generators(&self) -> Vec<(&'static str, u32)> {
        match *self {
            Preset::Cyclic { .. } => vec![("g", 1)],
            Preset::Dihedral(n) => vec![("r", 1), ("s", n as u32)],
            Preset::Quaternion8 => vec![("i", 2), ("j", 4)],
            Preset::Symmetric3 => vec![("r", 1), ("s", 3)],
            Preset::HeisenbergMod(p) => vec![("a", 1), ("b", p as u32)],
        }
    }

    /// Generators sent to `−1` by the `sign` module.
    fn sign_generators(&self) -> Result<Vec<&'static str>> {
        match *self {
            Preset::Cyclic { n, m } if (n * m) % 2 == 0 => Ok(vec!["g"]),
            Preset::Dihedral(_) | Preset::Symmetric3 => Ok(vec!["s"]),
            Preset::Quaternion8 => Ok(vec!["i"]),
            Preset::HeisenbergMod(2) => Ok(vec!["a"]),
            _ => Err(WorkbenchError::BadParams(format!("{self} has no sign character"))),
        }
    }

    pub fn build(&self) -> Result<AmbientExtension> {
        let g = Arc::new(self.group());
        let ext = match *self {
            Preset::Cyclic { m, .. } => AmbientExtension::from_generators(&g, &[m as u32])?,
            Preset::Dihedral(_) | Preset::Symmetric3 => AmbientExtension::from_generators(&g, &[1])?,
            Preset::Quaternion8 | Preset::HeisenbergMod(_) => AmbientExtension::new(center(&g))?,
        };
        Ok(ext)
    }
}

/// A module over a preset group: `Z`, `Z_d`, `Z^r`, `Z_d^r` or `sign`, optionally followed by
/// `:name=[[…]];name=[[…]]` giving integer action matrices on named generators.
/// Generators that are not listed act trivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec {
    pub modulus: Option<u64>,
    pub rank: usize,
    pub actions: Vec<(String, Vec<Vec<i64>>)>,
    pub sign: bool,
}

impl ModuleSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (base, rest) = match s.split_once(':') {
            Some((b, r)) => (b.trim(), Some(r.trim())),
            None => (s, None),
        };
        if base == "sign" {
            if rest.is_some() {
                return Err(WorkbenchError::Parse("`sign` takes no action matrices".into()));
            }
            return Ok(ModuleSpec { modulus: None, rank: 1, actions: Vec::new(), sign: true });
        }
        let (group, rank) = match base.split_once('^') {
            Some((g, r)) => {
                let r =
                    r.trim().parse::<usize>().map_err(|_| WorkbenchError::Parse(format!("bad rank in `{base}`")))?;
                (g.trim(), r)
            }
            None => (base, 1),
        };
        let modulus = match group {
            "Z" => None,
            _ => {
                let d = group
                    .strip_prefix("Z_")
                    .and_then(|d| d.parse::<u64>().ok())
                    .ok_or_else(|| WorkbenchError::Parse(format!("unknown module `{group}`")))?;
                if d < 2 {
                    return Err(WorkbenchError::BadParams(format!("modulus {d} is too small")));
                }
                Some(d)
            }
        };
        if rank == 0 {
            return Err(WorkbenchError::BadParams("rank must be positive".into()));
        }
        let mut actions = Vec::new();
        for item in rest.into_iter().flat_map(|r| r.split(';')).map(str::trim).filter(|x| !x.is_empty()) {
            let (name, matrix) = item
                .split_once('=')
                .ok_or_else(|| WorkbenchError::Parse(format!("expected name=[[…]] in `{item}`")))?;
            let matrix: Vec<Vec<i64>> = serde_json::from_str(matrix.trim())
                .map_err(|e| WorkbenchError::Parse(format!("matrix for `{name}`: {e}")))?;
            if matrix.len() != rank || matrix.iter().any(|row| row.len() != rank) {
                return Err(WorkbenchError::BadParams(format!("matrix for `{name}` is not {rank}×{rank}")));
            }
            actions.push((name.trim().to_string(), matrix));
        }
        Ok(ModuleSpec { modulus, rank, actions, sign: false })
    }

    pub fn is_trivial_action(&self) -> bool {
        !self.sign && self.actions.is_empty()
    }

    /// Builds the module over the preset's group, completing the action from generators.
    pub fn build(&self, preset: &Preset, group: Arc<FiniteGroup>) -> Result<GModule> {
        let base = match self.modulus {
            None => FgAbelianGroup::free(self.rank),
            Some(d) => FgAbelianGroup::diagonal(&vec![BigInt::from(d); self.rank]),
        };
        let named = preset.generators();
        let mut assigned: Vec<(u32, IntMatrix)> =
            named.iter().map(|&(_, g)| (g, IntMatrix::identity(self.rank))).collect();
        let mut set = |name: &str, m: IntMatrix| -> Result<()> {
            let slot = named
                .iter()
                .position(|&(n, _)| n == name)
                .ok_or_else(|| WorkbenchError::BadParams(format!("{preset} has no generator `{name}`")))?;
            assigned[slot].1 = m;
            Ok(())
        };
        if self.sign {
            for name in preset.sign_generators()? {
                set(name, IntMatrix::from_i64_rows(&[vec![-1]]))?;
            }
        }
        for (name, rows) in &self.actions {
            set(name, IntMatrix::from_i64_rows(rows))?;
        }
        GModule::from_generators(group, base, &assigned).map_err(|e| match e {
            extcohom_core::Error::ActionNotHomomorphic(msg) | extcohom_core::Error::InvalidModule(msg) => {
                WorkbenchError::ActionInconsistent(msg)
            }
            other => other.into(),
        })
    }
}

/// The extension and module named by a preset and a module spec.
pub fn build_preset(preset: &str, module: &str) -> Result<(Preset, AmbientExtension, Arc<GModule>)> {
    let p = Preset::parse(preset)?;
    let ext = p.build()?;
    let m = ModuleSpec::parse(module)?.build(&p, ext.group().clone())?;
    Ok((p, ext, Arc::new(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use extcohom_core::matrix::bigs;

    #[test]
    fn heisenberg_mod_2_shape() {
        let e = Preset::parse("heisenberg_mod(2)").unwrap().build().unwrap();
        assert_eq!(e.group().order(), 8);
        assert_eq!(e.normal().order(), 2);
        assert_eq!(e.quotient().order(), 4);
        assert!(e.quotient().is_abelian());
        assert!((1..4).all(|q| e.quotient().mul(q, q) == 0));
    }

    #[test]
    fn cyclic_tower_and_dihedral() {
        let e = Preset::parse("cyclic(2,2)").unwrap().build().unwrap();
        assert_eq!((e.group().order(), e.normal().elements()), (4, &[0u32, 2][..]));
        let d = Preset::parse("dihedral(4)").unwrap().build().unwrap();
        assert_eq!(d.quotient().order(), 2);
        assert_eq!(d.normal().elements(), &[0, 1, 2, 3]);
    }

    #[test]
    fn rejects_bad_names_and_params() {
        assert!(matches!(Preset::parse("octahedral"), Err(WorkbenchError::UnknownPreset(_))));
        assert!(matches!(Preset::parse("cyclic(2)"), Err(WorkbenchError::BadParams(_))));
        assert!(matches!(Preset::parse("heisenberg_mod(1)"), Err(WorkbenchError::BadParams(_))));
    }

    #[test]
    fn module_specs() {
        let (_, _, m) = build_preset("symmetric3", "sign").unwrap();
        assert_eq!(m.act(3, &bigs(&[1])), bigs(&[-1]));
        assert_eq!(m.act(1, &bigs(&[1])), bigs(&[1]));
        let (_, _, m) = build_preset("cyclic(3,3)", "Z_9:g=[[4]]").unwrap();
        assert_eq!(m.act(2, &bigs(&[1])), bigs(&[7]));
        let (_, _, m) = build_preset("dihedral(4)", "Z^2:r=[[0,-1],[1,0]];s=[[1,0],[0,-1]]").unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inconsistent_action_is_reported() {
        // r has order 4 but the matrix has order 3 modulo 7
        let err = build_preset("dihedral(4)", "Z_7:r=[[2]]").unwrap_err();
        assert!(matches!(err, WorkbenchError::ActionInconsistent(_)), "{err:?}");
    }
}
