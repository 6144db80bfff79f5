//! Whether `D(A#)` stays in class D, predicted from the shape of `D(A)` and
//! checked against the computed inverse.

use serde::Serialize;

use crate::chain::graph_group_inverse;
use crate::digraph::{analyze_structure, build_digraph, hub_layout, StructureReport};
use crate::error::Result;
use crate::matrix::RMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DigraphClass {
    Star,
    Corona,
    OtherInD,
    NotInD,
}

impl DigraphClass {
    pub fn of(report: &StructureReport) -> Self {
        if report.is_star {
            DigraphClass::Star
        } else if report.is_corona {
            DigraphClass::Corona
        } else if report.in_class_d {
            DigraphClass::OtherInD
        } else {
            DigraphClass::NotInD
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DigraphClass::Star => "star",
            DigraphClass::Corona => "corona",
            DigraphClass::OtherInD => "other_in_d",
            DigraphClass::NotInD => "not_in_d",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    pub input_class: DigraphClass,
    pub predicted_closure: bool,
    pub actual_closure: bool,
    pub actual_output_class: DigraphClass,
    pub input_star_center: Option<usize>,
    pub output_star_center: Option<usize>,
    /// Nonzero pattern of `A#` equals that of `A`.
    pub same_pattern: bool,
}

impl ClosureVerdict {
    pub fn prediction_holds(&self) -> bool {
        self.predicted_closure == self.actual_closure
    }
}

/// Requires `D(A)` strongly connected, in class D, with `Δ_A ≠ 0`.
pub fn classify_closure(a: &RMatrix) -> Result<ClosureVerdict> {
    let input = analyze_structure(&build_digraph(a)?);
    hub_layout(&build_digraph(a)?)?;
    let x = graph_group_inverse(a)?;
    let output = analyze_structure(&build_digraph(&x)?);
    let input_class = DigraphClass::of(&input);
    Ok(ClosureVerdict {
        input_class,
        predicted_closure: matches!(input_class, DigraphClass::Star | DigraphClass::Corona),
        actual_closure: output.in_class_d,
        actual_output_class: DigraphClass::of(&output),
        input_star_center: input.star_center,
        output_star_center: output.star_center,
        same_pattern: a.pattern() == x.pattern(),
    })
}

/// Under the class-D hypotheses, `D(A#)` is strongly connected and simple
/// symmetric. Errors when the hypotheses fail.
pub fn check_symmetric_closure(a: &RMatrix) -> Result<bool> {
    let x = graph_group_inverse(a)?;
    Ok(pattern_is_connected_simple_symmetric(&x))
}

/// Raw pattern check with no hypotheses: is `D(x)` strongly connected and
/// simple symmetric?
pub fn pattern_is_connected_simple_symmetric(x: &RMatrix) -> bool {
    build_digraph(x).map(|d| d.is_simple_symmetric() && d.is_strongly_connected()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::{ClassViolation, Error};
    use crate::fixtures;
    use crate::oracle::group_inverse_oracle;

    #[test]
    fn class_d_five_leaves_the_class() {
        let v = classify_closure(&fixtures::class_d_five()).unwrap();
        assert_eq!(v.input_class, DigraphClass::OtherInD);
        assert!(!v.predicted_closure && !v.actual_closure);
        assert_eq!(v.actual_output_class, DigraphClass::NotInD);
    }

    #[test]
    fn star_stays_a_star() {
        let v = classify_closure(&fixtures::star_five()).unwrap();
        assert_eq!(v.input_class, DigraphClass::Star);
        assert!(v.predicted_closure && v.actual_closure);
        assert_eq!(v.actual_output_class, DigraphClass::Star);
        assert_eq!(v.output_star_center, Some(1));
        assert!(v.same_pattern);
    }

    #[test]
    fn corona_stays_corona() {
        let a = RMatrix::from_i64(&[&[0, 2, 1, 0], &[1, 0, 0, -1], &[3, 0, 0, 0], &[0, 1, 0, 0]]);
        let v = classify_closure(&a).unwrap();
        assert_eq!((v.input_class, v.actual_output_class), (DigraphClass::Corona, DigraphClass::Corona));
        assert!(v.prediction_holds());
    }

    #[test]
    fn symmetric_closure() {
        assert!(check_symmetric_closure(&fixtures::ten_vertex()).unwrap());
        assert!(check_symmetric_closure(&fixtures::star_five()).unwrap());
        let outside = fixtures::outside_class_five();
        assert_eq!(
            check_symmetric_closure(&outside).unwrap_err(),
            Error::ClassViolation(ClassViolation::NotInClassD)
        );
        assert!(!pattern_is_connected_simple_symmetric(&group_inverse_oracle(&outside).unwrap()));
    }
}
