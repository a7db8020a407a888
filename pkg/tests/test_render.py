import pytest

from tverberg_kit.core.errors import InputError
from tverberg_kit.core.rational import PointConfig
from tverberg_kit.utils.render import render_svg

SQUARE_AND_AXIS = PointConfig.from_rows([[1, 1], [-1, -1], [-1, 1], [1, -1], [0, 0], [2, 0], [-2, 0]])


def test_render_points_hulls_and_common_point(tmp_path):
    # the third part is collinear, so its outline degenerates to a segment
    parts = ((0, 1), (2, 3), (4, 5, 6))
    path = render_svg(SQUARE_AND_AXIS, tmp_path / "witness.svg", parts, (0, 0), title="square and axis")
    text = path.read_text(encoding="utf-8")
    assert "<svg" in text
    assert path.suffix == ".svg"


def test_render_points_only(tmp_path):
    triangle = PointConfig.from_rows([[0, 0], [4, 0], [1, 3], ["1/2", "1/2"]])
    path = render_svg(triangle, tmp_path / "points.svg", parts=((0, 1, 2), (3,), ()))
    assert path.exists()


def test_render_rejects_non_planar(tmp_path):
    cube_corner = PointConfig.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    with pytest.raises(InputError):
        render_svg(cube_corner, tmp_path / "x.svg")
