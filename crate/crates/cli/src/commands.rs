//! `qe` and `limits`: thin wrappers over the library, generic in the category.

use catpure::category::Category;
use catpure::limits::{self, Outcome, ToJson, VwspInput};
use catpure::qe::{
    check_retract_closed, check_strong_characterization, validate_qe_epi, validate_qe_mono, validate_strong_qe_epi,
    ClassDescriptor, MorphismClass,
};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::input::{Failure, Literals};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Mono,
    Epi,
    StrongEpi,
    Retract,
    Characterization,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Diagram {
    Pushout,
    Pullback,
    Equalizer,
    Coequalizer,
    Product,
    Coproduct,
    CokernelPair,
    KernelPair,
    Vwck,
    Vwsp,
}

impl Diagram {
    fn arity(self) -> usize {
        match self {
            Diagram::CokernelPair | Diagram::KernelPair => 1,
            Diagram::Vwck => 3,
            Diagram::Vwsp => 5,
            _ => 2,
        }
    }
}

/// Report and verdict of one `qe` run.
pub fn run_qe<C: Literals>(cat: &C, desc: ClassDescriptor, which: Which, bound: u64) -> Result<(Value, bool), Failure> {
    let cls = MorphismClass::new(cat, desc, bound);
    Ok(match which {
        Which::Mono => {
            let r = validate_qe_mono(&cls, bound)?;
            (r.to_json(), r.passed())
        }
        Which::Epi => {
            let r = validate_qe_epi(&cls, bound)?;
            (r.to_json(), r.passed())
        }
        Which::StrongEpi => {
            let r = validate_strong_qe_epi(&cls, bound)?;
            (r.to_json(), r.passed())
        }
        Which::Retract => {
            let r = check_retract_closed(&cls, bound)?;
            let mut v = r.to_json(cat);
            v["category"] = json!(cat.label());
            v["class"] = json!(cls.descriptor().to_string());
            (v, r.closed)
        }
        Which::Characterization => {
            let r = check_strong_characterization(&cls, bound)?;
            (r.to_json(), r.consistent())
        }
    })
}

fn render<C: Category, T: ToJson<C>>(cat: &C, out: Outcome<T>) -> (Value, bool) {
    let found = out.witness.is_some();
    (out.to_json(cat), found)
}

/// Witness JSON (or a none-certificate) and whether a witness exists.
pub fn run_limits<C: Literals>(cat: &C, diagram: Diagram, args: &[String], bound: u64) -> Result<(Value, bool), Failure> {
    if args.len() != diagram.arity() {
        return Err(Failure::usage(format!("{diagram:?} diagram takes {} literals, got {}", diagram.arity(), args.len())));
    }
    let mors = || args.iter().map(|s| cat.parse_mor(s)).collect::<Result<Vec<_>, _>>();
    let (body, found) = match diagram {
        Diagram::Product | Diagram::Coproduct => {
            let a = cat.parse_obj(&args[0])?;
            let b = cat.parse_obj(&args[1])?;
            let out = match diagram {
                Diagram::Product => cat.product(&a, &b, bound)?,
                _ => cat.coproduct(&a, &b, bound)?,
            };
            render(cat, out)
        }
        Diagram::Pushout => {
            let m = mors()?;
            render(cat, cat.pushout(&m[0], &m[1], bound)?)
        }
        Diagram::Pullback => {
            let m = mors()?;
            render(cat, cat.pullback(&m[0], &m[1], bound)?)
        }
        Diagram::Equalizer => {
            let m = mors()?;
            render(cat, cat.equalizer(&m[0], &m[1], bound)?)
        }
        Diagram::Coequalizer => {
            let m = mors()?;
            render(cat, cat.coequalizer(&m[0], &m[1], bound)?)
        }
        Diagram::CokernelPair => render(cat, cat.cokernel_pair(&mors()?[0], bound)?),
        Diagram::KernelPair => render(cat, cat.kernel_pair(&mors()?[0], bound)?),
        Diagram::Vwck => {
            let m = mors()?;
            render(cat, limits::vwck_search(cat, &m[0], &m[1], &m[2], bound)?)
        }
        Diagram::Vwsp => {
            let m = mors()?;
            let input = VwspInput { f: m[0].clone(), g: m[1].clone(), h: m[2].clone(), q_b: m[3].clone(), q_c: m[4].clone() };
            render(cat, limits::vwsp_search(cat, &input, bound)?)
        }
    };
    let name = diagram.to_possible_value().map(|p| p.get_name().to_string());
    let mut v = json!({"category": cat.label(), "diagram": name, "bound": bound});
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    Ok((v, found))
}
