"""Check a few judgments from Python and show that redexes never reduce.

    python demos/checking.py
"""
from att import CheckError, Checker, explain, parse_document
from att.checker import computation_axiom
from att.parser import show

SOURCE = """
type A
type C (x : A, y : A, p : x = y)
const c (x : A) : C(x, x, r(x))
x : A |- J[u v e. C(u, v, e)](z. c(z), x, x, r(x)) : C(x, x, r(x))
x : A |- J[u v e. C(u, v, e)](z. c(z), x, x, r(x)) == c(x) : C(x, x, r(x))
"""


def main():
    doc = parse_document(SOURCE)
    ck = Checker(doc.signature)
    ck.signature()
    typed, equation = doc.items
    _, d = ck.judgment(typed.judgment)
    print(explain(d, ck.sig))
    try:
        ck.judgment(equation.judgment)
    except CheckError as e:
        print("\nrejected:", e)

    redex = typed.judgment.subjects[0]
    ax = computation_axiom(redex)
    ctx = typed.judgment.ctx
    _, T, _ = ck.infer(ctx, ax)
    names = [x.name for x in ctx]
    print("\nthe axiom", show(ax, names, ck.sig))
    print("  has type", show(T, names, ck.sig))


if __name__ == "__main__":
    main()
