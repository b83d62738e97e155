"""Walk through the model where the J computation rule fails but H still holds.

    python demos/counterexample.py
"""
from pathlib import Path

from att import build_id, functor_eq, j_elim, load_model
from att.groupoid import fmt
from att.verify import model_motives

MODELS = Path(__file__).resolve().parent.parent / "models"


def main():
    model = load_model(MODELS / "counterexample.json")
    a, cn, kn = model_motives(model)[0]
    A, C, c = model.type_pf(a), model.type_pf(cn), model.const_section(kn)
    print(model.description)
    print(f"motive {cn} has fibers {[F.name for F in C.fibers]} over a base of "
          f"{C.base.n_obj} objects")

    I = build_id(A)
    jd = j_elim(I, C, c)
    Dr = jd.J_r.display
    for g, (o1, o2) in enumerate(zip(jd.J_r.functor.obj, c.functor.obj)):
        x1 = Dr.pf.fibers[g].objects[Dr.obj_pair[int(o1)][1]]
        x2 = c.display.pf.fibers[g].objects[c.display.obj_pair[int(o2)][1]]
        print(f"  at {fmt(Dr.base.objects[g])}: J_c[r_A] = {x1}, c = {x2}")

    print("J_c[r_A] equals c:", functor_eq(jd.J_r.functor, c.functor))
    print("h_c components:", [fmt(Dr.total.morphisms[m]) for m in jd.h.comp])
    print("H_c is a section of the Id type:", jd.H.check().ok)


if __name__ == "__main__":
    main()
