import pytest

from lnd import ParseError, RingSpec
from lnd.specfile import loads

SAMPLE = """\
# comment line
ring Q[X][T,Y,Z]   # trailing comment
der D: Y -> X, Z -> Y
der E:
poly T' = T - Y^2 + 2*X*Z
poly U = T'^2 + 1
tuple t = (T', Y, Z)
expect apply D T' => 0 [published]
expect kernel-dim D 2 => 4 [derived: kernel oracle]
"""


def test_parse_sample():
    sf = loads(SAMPLE, "sample.lnd")
    assert sf.ring == RingSpec(("X",), ("T", "Y", "Z"))
    D = sf.derivation("D")
    assert D.images["T"] == 0 and D.images["Y"] == sf.poly("X")
    assert sf.derivation("E").is_zero()
    assert sf.polys["U"] == sf.poly("(T - Y^2 + 2*X*Z)^2 + 1")
    assert sf.tuples["t"] == (sf.polys["T'"], sf.poly("Y"), sf.poly("Z"))
    assert sf.tuple("(Y, Z, T)") == (sf.poly("Y"), sf.poly("Z"), sf.poly("T"))
    e1, e2 = sf.expectations
    assert (e1.check, e1.args, e1.expected, e1.provenance, e1.oracle) == ("apply", ("D", "T'"), "0", "published", None)
    assert (e2.provenance, e2.oracle, e2.line) == ("derived", "kernel oracle", 9)
    assert e2.tag() == "[derived: kernel oracle]"


def test_ring_without_base():
    sf = loads("ring Q[Y,Z]\nder D: Z -> Y\n")
    assert sf.ring.base == () and sf.ring.variables == ("Y", "Z")
    assert sf.derivation() is sf.derivations["D"]


def test_labels():
    sf = loads(SAMPLE)
    assert sf.label(sf.poly("Y")) == "Y"
    assert sf.label(sf.poly("T - Y^2 + 2*X*Z")) == "T'"
    assert sf.label(sf.poly("Y + Z")) == "Y + Z"


def test_expected_text_may_contain_brackets():
    sf = loads("ring Q[X][T]\nexpect rigid-pair D a b 2 => T' not in Q[X][T]  [published]\n")
    assert sf.expectations[0].expected == "T' not in Q[X][T]"


@pytest.mark.parametrize("text", [
    "",
    "der D: Y -> X\n",
    "ring Q[X][Y]\nring Q[Z]\n",
    "ring Q[X][Y]\nder D: X -> Y\n",
    "ring Q[X][Y]\nder D: Y -> 1, Y -> 2\n",
    "ring Q[X][Y]\nder D: Y 1\n",
    "ring Q[X][Y]\npoly P = W\n",
    "ring Q[X][Y]\npoly Y = X\n",
    "ring Q[X][Y]\npoly P = X\npoly P = Y\n",
    "ring Q[X][Y]\ntuple t = (X, , Y)\n",
    "ring Q[X][Y]\nfoo bar\n",
    "ring Q[X,X]\n",
    "ring Q[X][Y]\nexpect apply D P => 0\n",
    "ring Q[X][Y]\nexpect apply D P => 0 [quoted]\n",
    "ring Q[X][Y]\nexpect apply D P => 0 [derived]\n",
    "ring Q[X][Y]\nexpect apply D P => 0 [trivial: because]\n",
])
def test_malformed_files(text):
    with pytest.raises(ParseError):
        loads(text, "bad.lnd")


def test_errors_name_the_line():
    with pytest.raises(ParseError, match=r"bad.lnd:3"):
        loads("ring Q[Y]\n\npoly P = Y +\n", "bad.lnd")


def test_lookup_errors():
    sf = loads("ring Q[Y,Z]\nder D: Z -> Y\nder E:\n")
    with pytest.raises(ParseError):
        sf.derivation()
    with pytest.raises(ParseError):
        sf.derivation("F")
    with pytest.raises(ParseError):
        sf.tuple("missing")
