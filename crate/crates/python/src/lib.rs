//! Python bindings: parse presentation files, inspect the hypersurface and
//! run the full pipeline.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quadric::hypersurface::{self, EndAlgebraResult, HypersurfaceContext};
use quadric::mcm::{classify, CyclicIdentification};
use quadric::pipeline::{run_pipeline, RunOptions, Stage};

fn py_err(e: quadric::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Matrix = Vec<Vec<String>>;

/// A quadric hypersurface A = S/Sw read from presentation-file text.
#[pyclass(module = "quadric_py")]
struct Hypersurface {
    ctx: HypersurfaceContext,
    end: EndAlgebraResult,
}

#[pymethods]
impl Hypersurface {
    #[new]
    #[pyo3(signature = (text, degree = 6))]
    fn new(text: &str, degree: usize) -> PyResult<Self> {
        let (s, w) = quadric::parse::parse(text).map_err(py_err)?;
        let ctx = hypersurface::build_context(&s, &w, degree).map_err(py_err)?;
        let end = hypersurface::end_m(&ctx).map_err(py_err)?;
        Ok(Hypersurface { ctx, end })
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.ctx.a.generators().to_vec()
    }

    /// dim V − 1
    #[getter]
    fn d(&self) -> usize {
        self.ctx.d
    }

    fn hilbert_s(&self, upto: usize) -> Vec<usize> {
        self.ctx.s_alg.hilbert(upto)
    }

    fn hilbert_a(&self, upto: usize) -> Vec<usize> {
        self.ctx.a_alg.hilbert(upto)
    }

    /// dim C_0, ..., dim C_{d+3}
    fn koszul_dims(&self) -> Vec<usize> {
        self.ctx.koszul.iter().map(|c| c.dim()).collect()
    }

    fn end_dim(&self) -> usize {
        self.end.dim()
    }

    fn end_radical_dim(&self) -> usize {
        self.end.algebra.radical().dim()
    }

    fn end_basis(&self) -> Vec<Matrix> {
        self.end.basis.iter().map(|m| m.to_strings()).collect()
    }

    fn is_isolated(&self) -> bool {
        self.end.algebra.is_semisimple()
    }

    /// Wedderburn block dimensions of End(M).
    fn blocks(&self) -> PyResult<Vec<usize>> {
        self.end.algebra.block_structure().map_err(py_err)
    }

    #[pyo3(signature = (seed = 0))]
    fn primitive_idempotents(&self, seed: u64) -> PyResult<Vec<Matrix>> {
        let set = self.end.algebra.primitive_idempotents(seed).map_err(py_err)?;
        Ok(set
            .idempotents
            .iter()
            .map(|e| self.end.to_matrix(e).to_strings())
            .collect())
    }

    /// Annihilators x with M^i ≅ A/xA, one per summand, `None` when a
    /// summand is not cyclic.
    #[pyo3(signature = (seed = 0, degree = 6))]
    fn annihilators(&self, seed: u64, degree: usize) -> PyResult<Vec<Option<String>>> {
        let set = self.end.algebra.primitive_idempotents(seed).map_err(py_err)?;
        let mats: Vec<_> = set.idempotents.iter().map(|e| self.end.to_matrix(e)).collect();
        let m = hypersurface::syzygy_presentation(&self.ctx).map_err(py_err)?;
        let classes = classify(&m, &self.ctx.a_alg, &mats, degree).map_err(py_err)?;
        Ok(classes
            .summands
            .iter()
            .map(|s| match &s.identification {
                CyclicIdentification::Cyclic { annihilator, .. } => {
                    Some(self.ctx.a_alg.element_string(annihilator, 1))
                }
                CyclicIdentification::NonCyclic { .. } => None,
            })
            .collect())
    }

    /// (dim, radical dim) of C(A) built from the quadratic dual.
    fn c_algebra(&self) -> PyResult<(usize, usize)> {
        let dual = hypersurface::c_algebra_via_dual(&self.ctx, None).map_err(py_err)?;
        Ok((dual.algebra.dim(), dual.algebra.radical().dim()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypersurface(generators={:?}, d={}, end_dim={})",
            self.ctx.a.generators(),
            self.ctx.d,
            self.end.dim()
        )
    }
}

/// Result of a pipeline run.
#[pyclass(module = "quadric_py")]
struct Report {
    inner: quadric::pipeline::Report,
}

#[pymethods]
impl Report {
    #[getter]
    fn succeeded(&self) -> bool {
        self.inner.succeeded()
    }

    #[getter]
    fn isolated(&self) -> Option<bool> {
        self.inner.isolated()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    fn json(&self) -> String {
        self.inner.to_json()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (text, degree = 6, seed = 0, stage = None, skip_qp_check = false))]
fn run(text: &str, degree: usize, seed: u64, stage: Option<&str>, skip_qp_check: bool) -> PyResult<Report> {
    let stop_after = match stage {
        None => None,
        Some(name) => Some(
            Stage::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown stage `{name}`")))?,
        ),
    };
    let opts = RunOptions {
        horizon: degree,
        seed,
        stop_after,
        skip_qp_check,
    };
    Ok(Report {
        inner: run_pipeline(text, &opts),
    })
}

/// Hilbert function of T(V)/(R) for a file's S, up to `upto`.
#[pyfunction]
fn hilbert(text: &str, upto: usize) -> PyResult<Vec<usize>> {
    let (s, _) = quadric::parse::parse(text).map_err(py_err)?;
    Ok(quadric::quadratic::hilbert(&s, upto))
}

#[pymodule]
fn quadric_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hypersurface>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    const SKEW: &str = include_str!("../../../inputs/skew_quadric.txt");

    #[test]
    fn module_from_python() {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "quadric_py").unwrap();
            quadric_py(&m).unwrap();
            let locals = PyDict::new(py);
            locals.set_item("q", m).unwrap();
            locals.set_item("text", SKEW).unwrap();
            py.run(
                c"h = q.Hypersurface(text)
assert h.end_dim() == 4 and h.is_isolated()
assert h.hilbert_a(4) == [1, 3, 5, 7, 9]
assert sorted(h.annihilators()) == ['x + z', 'x - z', 'y + i*z', 'y - i*z']
r = q.run(text, stage='end-m')
assert r.succeeded and r.isolated is None
try:
    q.run(text, stage='nope')
    raise AssertionError('unknown stage accepted')
except ValueError:
    pass",
                None,
                Some(&locals),
            )
            .unwrap();
        });
    }
}
