"""Verify every shipped model and print a short summary per type.

    python demos/model_tour.py
"""
import time

from att.grothendieck import is_normal_at, total_groupoid
from att.groupoid import identity_functor
from att.models import shipped_models
from att.verify import verify_model


def main():
    for m in shipped_models():
        t0 = time.perf_counter()
        r = verify_model(m)
        print(f"{m.name}: {'PASS' if r.ok else 'FAIL'} "
              f"({r.total_checks()} checks, {time.perf_counter() - t0:.2f}s)")
        for name, A in m.pseudofunctors():
            D = total_groupoid(A)
            normal = is_normal_at(D, identity_functor(D.total))
            print(f"  {name:6s} total {D.total.n_obj} objects / {D.total.n_mor} morphisms, "
                  f"strict={A.is_strict()}, transport normal={normal}")


if __name__ == "__main__":
    main()
