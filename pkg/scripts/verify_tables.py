"""Re-evaluate the shipped Table I/II braidwords under both composition orders."""
import argparse
import json

from su2k_braid.verification import ORDERS, table1_records, table2_records


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", help="write all records as JSON")
    args = ap.parse_args()
    dump = {}
    for order in ORDERS:
        recs = table1_records(order) + table2_records(order)
        print(f"== {order}: {sum(r.ok for r in recs)}/{len(recs)} rows pass")
        for r in recs:
            got = " ".join(f"{k}={v:.6g}" for k, v in r.computed.items())
            print(f"  {'ok ' if r.ok else 'BAD'} {r.table:2s} k={r.k} {r.gate:4s} {r.braidword:16s} {got}")
        dump[order] = [r.to_dict() for r in recs]
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(dump, fh, indent=1)


if __name__ == "__main__":
    main()
