from importlib.resources import as_file, files

import pandas as pd

from .poly import poly_new


def _read_corpus(name: str) -> pd.DataFrame:
    source = files("hurwitzkit").joinpath(f"data/{name}.csv")
    with as_file(source) as file:
        df = pd.read_csv(file, dtype=str, keep_default_na=False)
    df["poly"] = df["coeffs"].map(lambda s: poly_new(s.split()))
    return df


def worked_examples() -> pd.DataFrame:
    """
    Hand-checked polynomials with their exact Routh chains.

    :return:
        A Pandas DataFrame with 7 observations and 7 variables:

        ============================== ========================================
        **name** (`object`)            Short label
        **coeffs** (`object`)          Ascending coefficients, space separated
        **verdict** (`object`)         ``Stable`` or ``NotStable``
        **routh_failure** (`object`)   First failing Routh step, empty if none
        **chain_cs** (`object`)        Routh parameters, empty if unstable
        **chain_b** (`object`)         Terminal constant, empty if unstable
        **poly** (`object`)            Parsed ``Polynomial``
        ============================== ========================================

    :rtype: pd.DataFrame
    """
    return _read_corpus("worked_examples")


def degenerate_corpus() -> pd.DataFrame:
    """
    Inputs on or near the edge of the stability region: roots on the
    imaginary axis, a root at the origin, a constant.

    :return:
        A Pandas DataFrame with 5 observations and 7 variables:

        ============================== ========================================
        **name** (`object`)            Short label
        **coeffs** (`object`)          Ascending coefficients, space separated
        **verdict** (`object`)         Exact verdict
        **routh_failure** (`object`)   First failing Routh step, empty if none
        **oracle** (`object`)          Floating-point verdict, empty for
                                       constants
        **exit** (`int`)               Exit code of ``hurwitzkit check``
        **poly** (`object`)            Parsed ``Polynomial``
        ============================== ========================================

    :rtype: pd.DataFrame
    """
    return _read_corpus("degenerate_corpus").astype({"exit": int})
