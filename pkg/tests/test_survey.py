import pandas as pd
import pytest

from tverberg_kit.settings import Settings
from tverberg_kit.utils.survey import instance_shape, run_survey, save_table, summarize


def test_instance_shapes():
    assert instance_shape("tverberg", 1) == (7, 2)
    assert instance_shape("vkf", 1) == (11, 3)
    assert instance_shape("reduce", 2) == (13, 5)
    with pytest.raises(KeyError):
        instance_shape("radon", 1)


def test_tverberg_survey_table(tmp_path):
    df = run_survey("tverberg", 3, 10, Settings())
    assert list(df.columns[:3]) == ["seed", "ok", "seconds"]
    assert df["seed"].tolist() == [10, 11, 12]
    assert df["ok"].all()
    summary = summarize(df)
    assert int(summary["runs"].iloc[0]) == 3
    assert int(summary["successes"].iloc[0]) == 3

    csv = save_table(df, tmp_path / "runs.csv")
    assert pd.read_csv(csv)["seed"].tolist() == [10, 11, 12]
    parquet = save_table(df, tmp_path / "runs.parquet")
    assert pd.read_parquet(parquet, engine="pyarrow")["ok"].all()


@pytest.mark.slow
def test_reduce_survey_records_retries():
    df = run_survey("reduce", 2, 1, Settings())
    assert df["ok"].all()
    assert "max_retries" in summarize(df).columns
