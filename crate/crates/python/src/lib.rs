use pyo3::prelude::*;

#[pymodule]
fn l2sig_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
