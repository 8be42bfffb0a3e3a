//! Presentation files.
//!
//! Statements end with `;` and `#` starts a comment:
//!
//! ```text
//! inv | finv
//! group free | group abelian | group perm <n> <gen>=(cycles) ...
//! gens <names>
//! rels <lhs> = <rhs>[, <lhs> = <rhs> ...]
//! builtin fim | free_finv | margolis_meakin | fim_as_finv
//! ```
//!
//! An empty side of a relator is the identity word. `builtin` replaces
//! `rels` and fixes the mode; `fim`, `free_finv` and `fim_as_finv` need
//! the free group, which is also the default when no `group` is given.

use crate::closure::{ClosureBudget, ClosureOperator, Mode, RelationSystem};
use crate::error::{Error, Result};
use crate::groups::{parse_cycles, Group};
use crate::monoid::MonoidContext;
use crate::words::{parse_term, Alphabet, FTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Munn's free inverse monoid.
    Fim,
    /// The free F-inverse monoid.
    FreeFinv,
    /// Margolis–Meakin expansion of the declared group.
    MargolisMeakin,
    /// The free inverse monoid as an F-inverse monoid.
    FimAsFinv,
}

impl Builtin {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "fim" => Builtin::Fim,
            "free_finv" => Builtin::FreeFinv,
            "margolis_meakin" => Builtin::MargolisMeakin,
            "fim_as_finv" => Builtin::FimAsFinv,
            _ => return None,
        })
    }

    pub fn mode(self) -> Mode {
        match self {
            Builtin::Fim | Builtin::MargolisMeakin => Mode::EUnitary,
            Builtin::FreeFinv | Builtin::FimAsFinv => Mode::FInverse,
        }
    }

    fn operator(self) -> ClosureOperator {
        match self {
            Builtin::Fim | Builtin::MargolisMeakin => ClosureOperator::IdentityConnected,
            Builtin::FreeFinv => ClosureOperator::IdentityAll,
            Builtin::FimAsFinv => ClosureOperator::TreeConnect,
        }
    }
}

/// A loaded presentation and the monoid context it defines.
#[derive(Debug, Clone)]
pub struct Presentation {
    mode: Mode,
    builtin: Option<Builtin>,
    relators: Vec<(FTerm, FTerm)>,
    context: MonoidContext,
}

#[derive(Debug)]
enum GroupDecl {
    Free,
    Abelian,
    Perm {
        degree: usize,
        images: Vec<(String, String)>,
    },
}

fn fail(statement: usize, message: impl Into<String>) -> Error {
    Error::Presentation {
        statement,
        message: message.into(),
    }
}

/// Splits `x=(1 2) y=(1 2 3)(4 5)` into name/cycle pairs.
fn split_images(text: &str, statement: usize) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let eq = rest
            .find('=')
            .ok_or_else(|| fail(statement, format!("expected `<gen>=(cycles)` in `{rest}`")))?;
        let name = rest[..eq].trim().to_string();
        let mut body = rest[eq + 1..].trim_start();
        let mut cycles = String::new();
        while body.starts_with('(') {
            let close = body
                .find(')')
                .ok_or_else(|| fail(statement, "unclosed cycle"))?;
            cycles.push_str(&body[..=close]);
            body = body[close + 1..].trim_start();
        }
        if cycles.is_empty() {
            return Err(fail(statement, format!("missing cycles for `{name}`")));
        }
        out.push((name, cycles));
        rest = body;
    }
    Ok(out)
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Self> {
        let mut mode: Option<Mode> = None;
        let mut group: Option<GroupDecl> = None;
        let mut gens: Option<Vec<String>> = None;
        let mut rels: Vec<(usize, String, String)> = Vec::new();
        let mut builtin: Option<Builtin> = None;

        let cleaned: String = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");

        let statements = cleaned.split(';').map(str::trim).filter(|s| !s.is_empty());
        for (i, stmt) in statements.enumerate() {
            let n = i + 1;
            let (keyword, rest) = stmt
                .split_once(char::is_whitespace)
                .map_or((stmt, ""), |(k, r)| (k, r.trim()));
            match keyword {
                "inv" | "finv" => {
                    if !rest.is_empty() {
                        return Err(fail(n, format!("unexpected `{rest}` after `{keyword}`")));
                    }
                    let m = if keyword == "inv" {
                        Mode::EUnitary
                    } else {
                        Mode::FInverse
                    };
                    if mode.replace(m).is_some_and(|old| old != m) {
                        return Err(fail(n, "conflicting `inv`/`finv` declarations"));
                    }
                }
                "group" => {
                    let mut words = rest.split_whitespace();
                    let decl = match words.next() {
                        Some("free") if words.next().is_none() => GroupDecl::Free,
                        Some("abelian") if words.next().is_none() => GroupDecl::Abelian,
                        Some("perm") => {
                            let after = rest["perm".len()..].trim_start();
                            let (deg, images) =
                                after.split_once(char::is_whitespace).unwrap_or((after, ""));
                            let degree: usize = deg
                                .parse()
                                .map_err(|_| fail(n, format!("bad permutation degree `{deg}`")))?;
                            GroupDecl::Perm {
                                degree,
                                images: split_images(images, n)?,
                            }
                        }
                        _ => return Err(fail(n, format!("unknown group kind `{rest}`"))),
                    };
                    if group.replace(decl).is_some() {
                        return Err(fail(n, "group declared twice"));
                    }
                }
                "gens" => {
                    let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if gens.replace(names).is_some() {
                        return Err(fail(n, "generators declared twice"));
                    }
                }
                "rels" => {
                    for rel in rest.split(',') {
                        let (lhs, rhs) = rel.split_once('=').ok_or_else(|| {
                            fail(n, format!("relator `{}` has no `=`", rel.trim()))
                        })?;
                        if rhs.contains('=') {
                            return Err(fail(n, format!("relator `{}` has two `=`", rel.trim())));
                        }
                        rels.push((n, lhs.trim().to_string(), rhs.trim().to_string()));
                    }
                }
                "builtin" => {
                    let b = Builtin::parse(rest)
                        .ok_or_else(|| fail(n, format!("unknown builtin `{rest}`")))?;
                    if builtin.replace(b).is_some() {
                        return Err(fail(n, "builtin declared twice"));
                    }
                }
                other => return Err(fail(n, format!("unknown statement `{other}`"))),
            }
        }

        let alphabet = Alphabet::new(gens.ok_or_else(|| fail(0, "missing `gens`"))?)?;

        if let Some(b) = builtin {
            if !rels.is_empty() {
                return Err(fail(rels[0].0, "`rels` cannot be combined with `builtin`"));
            }
            if mode.is_some_and(|m| m != b.mode()) {
                return Err(fail(0, "declared mode conflicts with the builtin"));
            }
            if b != Builtin::MargolisMeakin && !matches!(group, None | Some(GroupDecl::Free)) {
                return Err(fail(0, "this builtin requires `group free`"));
            }
        }
        let mode = match (mode, builtin) {
            (_, Some(b)) => b.mode(),
            (Some(m), None) => m,
            (None, None) => return Err(fail(0, "missing `inv` or `finv`")),
        };

        let group = match group {
            None if builtin.is_some() => Group::free(alphabet),
            None => return Err(fail(0, "missing `group`")),
            Some(GroupDecl::Free) => Group::free(alphabet),
            Some(GroupDecl::Abelian) => Group::free_abelian(alphabet),
            Some(GroupDecl::Perm { degree, images }) => {
                let mut tables = vec![None; alphabet.len()];
                for (name, cycles) in images {
                    let g = alphabet
                        .lookup(&name)
                        .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                    if tables[g as usize]
                        .replace(parse_cycles(&cycles, degree)?)
                        .is_some()
                    {
                        return Err(fail(0, format!("two images given for `{name}`")));
                    }
                }
                let tables = tables
                    .into_iter()
                    .enumerate()
                    .map(|(g, t)| {
                        t.ok_or_else(|| {
                            fail(
                                0,
                                format!("no image given for `{}`", alphabet.name(g as u32)),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Group::permutation(alphabet, degree, tables)?
            }
        };

        let mut relators = Vec::with_capacity(rels.len());
        for (n, lhs, rhs) in &rels {
            let parse = |side: &str| {
                let t = parse_term(side, group.alphabet())?;
                if mode == Mode::EUnitary && t.as_word().is_none() {
                    return Err(fail(
                        *n,
                        format!("term relator `{side}` in an `inv` presentation"),
                    ));
                }
                Ok(t)
            };
            relators.push((parse(lhs)?, parse(rhs)?));
        }

        let operator = match builtin {
            Some(b) => b.operator(),
            None => ClosureOperator::Relation(RelationSystem::new(
                &group,
                mode,
                relators.iter().cloned(),
            )?),
        };
        let context = MonoidContext::new(group, operator, ClosureBudget::default())?;
        Ok(Presentation {
            mode,
            builtin,
            relators,
            context,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn builtin(&self) -> Option<Builtin> {
        self.builtin
    }

    /// Relator pairs as written, before symmetric closure.
    pub fn relators(&self) -> &[(FTerm, FTerm)] {
        &self.relators
    }

    pub fn context(&self) -> &MonoidContext {
        &self.context
    }

    pub fn group(&self) -> &Group {
        self.context.group()
    }

    /// Parses a word or term in this presentation's signature.
    pub fn parse_term(&self, text: &str) -> Result<FTerm> {
        let t = parse_term(text, self.group().alphabet())?;
        if self.mode == Mode::EUnitary && t.as_word().is_none() {
            return Err(Error::ModeMismatch(
                "^m is not available in `inv` presentations".into(),
            ));
        }
        Ok(t)
    }
}

/// Loads a presentation; shorthand for [`Presentation::parse`].
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    Presentation::parse(text)
}
