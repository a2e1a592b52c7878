#!/usr/bin/env python3
"""Regenerates the bundled fixtures under data/fixtures.

Output is deterministic; rerun after changing this script and commit the
result. Usage: tools/gen_fixtures.py [data/fixtures]
"""

import csv
import datetime as dt
import json
import random
import sys
from pathlib import Path

TAGS = ["java", "javascript", "android", "python", "php"]
BASE = dt.datetime(2019, 3, 4, 9, 0, 0, tzinfo=dt.timezone.utc)

VERBS = ["load", "parse", "build", "read", "write", "find", "update", "create", "fetch", "merge",
         "render", "encode", "decode", "resolve", "validate", "export", "import", "compute"]
NOUNS = ["User", "Config", "Item", "Buffer", "Session", "Token", "Request", "Order", "Cache",
         "Profile", "Invoice", "Widget", "Record", "Payload", "Header", "Column", "Message"]

PLAIN_COMMENTS = [
    "Thanks, this works for me now.",
    "This fails when the input is empty.",
    "Could you explain the second step a bit more?",
    "Great answer, exactly what I needed.",
    "I still get the same result as before.",
    "That is not what the question asks.",
    "Please add some explanation to the code.",
    "Works on my machine, but not on the server.",
]


def ts(minutes):
    return (BASE + dt.timedelta(minutes=minutes)).strftime("%Y-%m-%dT%H:%M:%SZ")


class Dump:
    def __init__(self):
        self.posts, self.versions, self.comments = [], [], []
        self.next_comment = 1

    def question(self, qid, author, tag, minute):
        self.posts.append({"id": qid, "kind": "question", "parent_id": None, "author_id": author,
                           "created_at": ts(minute), "score": 1, "tag": tag})

    def answer(self, aid, qid, author, tag, minute, score=0):
        self.posts.append({"id": aid, "kind": "answer", "parent_id": qid, "author_id": author,
                           "created_at": ts(minute), "score": score, "tag": tag})

    def version(self, aid, index, editor, minute, blocks):
        self.versions.append({"post_id": aid, "version": index, "editor_id": editor,
                              "created_at": ts(minute), "code_blocks": blocks})

    def comment(self, aid, author, minute, text, cid=None):
        if cid is None:
            cid = self.next_comment
            self.next_comment += 1
        self.comments.append({"id": cid, "post_id": aid, "author_id": author,
                              "created_at": ts(minute), "text": text})
        return cid

    def write(self, out):
        out.mkdir(parents=True, exist_ok=True)
        for name, rows in (("posts", self.posts), ("versions", self.versions),
                           ("comments", self.comments)):
            with open(out / f"{name}.jsonl", "w", newline="\n") as f:
                for r in rows:
                    f.write(json.dumps(r, ensure_ascii=False) + "\n")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# --------------------------------------------------------------- renamed_variable

def gen_renamed_variable(out):
    d = Dump()
    q, a, asker, answerer = 8949000, 8949391, 501, 502
    d.question(q, asker, "java", 0)
    d.answer(a, q, answerer, "java", 30, score=7)
    d.version(a, 1, answerer, 30, ["Client client = new Client();"])
    d.version(a, 2, answerer, 45, ["Client client = new Client(host);"])
    d.version(a, 3, answerer, 60, ["Client client = new Client(host);\nclient.send(message);"])
    d.version(a, 4, answerer, 90,
              ["Client yourClientObject = new Client(host);\nyourClient.send(message);"])
    d.comment(a, 503, 40, "Thanks, that compiles now.")
    d.comment(a, asker, 120,
              "Where is yourClient defined? You create yourClientObject but then never use it.",
              cid=11091234)
    d.version(a, 5, answerer, 150,
              ["Client yourClientObject = new Client(host);\nyourClientObject.send(message);"])
    d.write(out)


# --------------------------------------------------------------- localstorage

def gen_localstorage(out):
    d = Dump()
    q, a, asker, answerer = 34459000, 34459380, 601, 602
    d.question(q, asker, "javascript", 0)
    d.answer(a, q, answerer, "javascript", 20, score=12)
    v1 = 'var theArray = [1, 2, 3];\nlocalStorage.setItem("theArray", JSON.stringify(theArray));'
    v2 = v1 + '\nvar restored = JSON.parse(localStorage.getItem("theArray"));'
    v3 = v2 + ("\nfunction setArrayInLocalStorage(key, array) { localStorage.setItem(key, JSON.stringify(array));}\n"
          "function getArrayInLocalStorage(key) { return JSON.parse(localStorage.getItem(key));}\n"
          "setArrayInLocalStorage(\"theArray\", [1, 2, 3]);")
    d.version(a, 1, answerer, 20, [v1])
    d.version(a, 2, answerer, 35, [v2])
    d.comment(a, asker, 60,
              "So in this example is theArray also the key in the local storage. so for me if I had "
              "the key as keyword and the array as myArray would it then be, "
              "localStorage.setItem('keyword', JSON.stringify(myArray)); ?", cid=56710001)
    d.version(a, 3, answerer, 95, [v3])
    d.write(out)


# --------------------------------------------------------------- utf8 + replay

BEFORE_LINE = 'String s = new String(bytes, "UTF-8");'
BEFORE_BLOCK = ["byte[] bytes = load();", BEFORE_LINE]


def java_file(lines_before, body, crlf=False):
    pre = [f"// line {i + 1}" for i in range(lines_before)]
    text = "\n".join(pre + body) + "\n"
    return text.replace("\n", "\r\n") if crlf else text


def gen_utf8(out):
    d = Dump()
    q, a, asker, answerer = 52517000, 52517618, 701, 702
    d.question(q, asker, "java", 0)
    d.answer(a, q, answerer, "java", 15, score=31)
    d.version(a, 1, answerer, 15, ["byte[] bytes = load();"])
    d.version(a, 2, answerer, 20, ["byte[] bytes = load();\nString s = new String(bytes);"])
    d.version(a, 3, answerer, 25, ["byte[] bytes = load();\n" + BEFORE_LINE])
    d.comment(a, 703, 300,
              "On Java 7 you can also use `new String(bytes, StandardCharsets.UTF_8);` which avoids "
              "having to catch the `UnsupportedEncodingException`", cid=91817001)
    d.version(a, 4, answerer, 400,
              ["byte[] bytes = load();\nString s = new String(bytes, StandardCharsets.UTF_8);"])
    d.write(out)

    now = dt.datetime(2026, 10, 1, 12, 0, 0, tzinfo=dt.timezone.utc)

    def pushed(days):
        return (now - dt.timedelta(days=days)).strftime("%Y-%m-%dT%H:%M:%SZ")

    def repo(name, lang, stars, days):
        return {"full_name": name, "language": lang, "stargazers_count": stars,
                "pushed_at": pushed(days), "default_branch": "main"}

    # the block starts on line 12; trailing whitespace and CRLF exercise normalization
    util_body = [BEFORE_BLOCK[0] + "  ", BEFORE_BLOCK[1] + "\t", "return s;"]
    files = {
        "acme/textkit": {
            "src/main/java/acme/Util.java": java_file(11, util_body, crlf=True),
            "src/main/java/acme/Other.java": java_file(2, ["int x = 1;"]),
            "README.md": "\n".join(BEFORE_BLOCK) + "\n",
        },
        "beta/codecs": {
            "lib/Codec.java": java_file(0, BEFORE_BLOCK + ["", "// again"] + BEFORE_BLOCK),
        },
        "tiny/stars": {"A.java": java_file(0, BEFORE_BLOCK)},
        "old/stale": {"A.java": java_file(0, BEFORE_BLOCK)},
        "kt/other": {"A.java": java_file(0, BEFORE_BLOCK)},
        "no/prs": {"A.java": java_file(0, BEFORE_BLOCK)},
        "edge/fresh": {"src/B.java": java_file(3, ["class B {}"])},
    }
    items = [
        repo("beta/codecs", "Java", 50, 3),
        repo("acme/textkit", "Java", 120, 10),
        repo("tiny/stars", "Java", 4, 5),        # below the star minimum
        repo("old/stale", "Java", 300, 91),      # pushed 91 days ago
        repo("kt/other", "Kotlin", 80, 2),       # wrong language
        repo("no/prs", "Java", 60, 1),           # no closed pull requests
        repo("acme/textkit", "Java", 120, 10),   # duplicate
        repo("edge/fresh", "java", 5, 90),       # boundary values, still included
    ]
    recording = {
        "searches": [{"query": "*", "items": items}],
        "closed_pull_requests": {"beta/codecs": 4, "acme/textkit": 17, "tiny/stars": 2,
                                 "old/stale": 9, "kt/other": 3, "no/prs": 0, "edge/fresh": 1},
        "files": files,
    }
    with open(out / "github_replay.json", "w", newline="\n") as f:
        json.dump(recording, f, indent=2)
        f.write("\n")


# --------------------------------------------------------------- ground truth corpus

# tag: existing, detected, detected-correct, baseline-detected, baseline-correct
GT_TARGETS = {
    "java": (38, 20, 18, 81, 24),
    "javascript": (33, 14, 10, 65, 23),
    "android": (40, 25, 14, 96, 27),
    "python": (38, 13, 9, 59, 20),
    "php": (45, 16, 11, 63, 23),
}


def term_for(rng):
    return rng.choice(VERBS) + rng.choice(NOUNS)


def gen_ground_truth(out):
    rng = random.Random(194)
    d = Dump()
    gt = []
    next_post = 100000
    user = 10000

    def new_answer(tag):
        nonlocal next_post, user
        q, a = next_post, next_post + 1
        next_post += 2
        asker, answerer, other = user, user + 1, user + 2
        user += 3
        start = rng.randrange(0, 500000)
        d.question(q, asker, tag, start)
        d.answer(a, q, answerer, tag, start + 10, score=rng.randrange(0, 40))
        base_code = f"int count = 0;\nfor (Item item : items) {{\n    count += item.size;\n}}"
        d.version(a, 1, answerer, start + 10, [base_code])
        return a, asker, answerer, other, start, base_code

    for tag, (existing, detected, correct, b_detected, b_correct) in GT_TARGETS.items():
        wrong = detected - correct
        k2 = wrong // 2                       # matched to an earlier edit than the true one
        k3 = wrong - k2                       # matched, but the comment caused no edit
        k4 = b_correct - correct              # missed: no code terms, true edit is the next one
        k5 = existing - correct - k2 - k4     # missed: no code terms, true edit is a later one
        fill = b_detected - existing - k3     # unlabelled comments followed by an edit
        assert min(k2, k3, k4, k5, fill) >= 0, tag
        kinds = (["k1"] * correct + ["k2"] * k2 + ["k3"] * k3 + ["k4"] * k4 + ["k5"] * k5 +
                 ["fill"] * fill)
        for kind in kinds:
            a, asker, answerer, other, start, code = new_answer(tag)
            commenter = rng.choice([asker, other])
            if kind in ("k1", "k2", "k3"):
                term = term_for(rng)
                c = d.comment(a, commenter, start + 30, f"You should call {term} before the loop.")
                d.version(a, 2, answerer, start + 60, [code + f"\nResult r = {term}(items);"])
            else:
                c = d.comment(a, commenter, start + 30, rng.choice(PLAIN_COMMENTS))
                d.version(a, 2, answerer, start + 60, [code + "\n// updated"])
            if kind in ("k2", "k5"):
                d.version(a, 3, answerer, start + 90, [code + "\n// updated\n// and again"])
            if kind in ("k1", "k4"):
                gt.append((a, c, 2))
            elif kind in ("k2", "k5"):
                gt.append((a, c, 3))
            elif kind == "k3":
                gt.append((a, c, ""))
    out.mkdir(parents=True, exist_ok=True)
    d.write(out)
    gt.sort()
    write_csv(out / "ground_truth.csv", ["answer_id", "comment_id", "edit_version"], gt)


# --------------------------------------------------------------- annotated corpus

CATEGORIES = ["Correction", "Extension", "Flaw", "Error", "Obsolete", "Disagree", "Question",
              "Request", "Solution", "Other"]

# tag: {category: (all, useful)}
CATEGORY_TARGETS = {
    "java": {"Error": (98, 22), "Request": (60, 1), "Correction": (23, 9), "Disagree": (39, 2),
             "Question": (35, 4), "Flaw": (22, 12), "Solution": (22, 13), "Extension": (3, 3),
             "Obsolete": (1, 1), "Other": (2, 0)},
    "javascript": {"Error": (91, 21), "Request": (53, 1), "Correction": (47, 34),
                   "Disagree": (31, 1), "Question": (35, 5), "Flaw": (21, 11),
                   "Solution": (11, 8), "Extension": (13, 10), "Obsolete": (2, 0),
                   "Other": (3, 0)},
    "android": {"Error": (126, 42), "Request": (44, 1), "Correction": (26, 17),
                "Disagree": (35, 0), "Question": (28, 3), "Flaw": (5, 3), "Solution": (8, 2),
                "Extension": (2, 2), "Obsolete": (2, 1), "Other": (8, 0)},
    "python": {"Error": (88, 35), "Request": (34, 0), "Correction": (52, 43),
               "Disagree": (42, 0), "Question": (21, 3), "Flaw": (20, 13), "Solution": (22, 8),
               "Extension": (9, 2), "Obsolete": (3, 3), "Other": (1, 0)},
    "php": {"Error": (108, 17), "Request": (45, 0), "Correction": (51, 30), "Disagree": (37, 0),
            "Question": (24, 1), "Flaw": (11, 8), "Solution": (8, 3), "Extension": (2, 0),
            "Obsolete": (1, 1), "Other": (7, 0)},
}
# tag: (reviewed, tangled, useful and tangled)
TANGLED_TARGETS = {
    "java": (382, 41, 8),
    "javascript": (382, 41, 9),
    "android": (382, 23, 6),
    "python": (382, 29, 10),
    "php": (382, 27, 6),
}


def gen_annotated(out):
    rng = random.Random(1910)
    d = Dump()
    ann = []
    next_post = 300000
    user = 50000
    for tag in TAGS:
        reviewed, tangled, useful_tangled = TANGLED_TARGETS[tag]
        rows = []  # (confirmed, category, useful)
        for cat in CATEGORIES:
            total, useful = CATEGORY_TARGETS[tag][cat]
            rows += [(True, cat, True)] * useful + [(True, cat, False)] * (total - useful)
        confirmed = len(rows)
        rows += [(False, "", False)] * (reviewed - confirmed)
        rng.shuffle(rows)
        useful_idx = [i for i, r in enumerate(rows) if r[0] and r[2]]
        other_idx = [i for i, r in enumerate(rows) if r[0] and not r[2]]
        tangled_set = set(rng.sample(useful_idx, useful_tangled) +
                          rng.sample(other_idx, tangled - useful_tangled))
        for i, (conf, cat, useful) in enumerate(rows):
            q, a = next_post, next_post + 1
            next_post += 2
            asker, answerer, third = user, user + 1, user + 2
            user += 3
            start = rng.randrange(0, 900000)
            d.question(q, asker, tag, start)
            d.answer(a, q, answerer, tag, start + 5, score=int(rng.expovariate(1 / 12)))
            term = term_for(rng)
            code = "value = compute(input)"
            d.version(a, 1, answerer, start + 5, [code])
            commenter = asker if rng.random() < 0.6 else third
            c = d.comment(a, commenter, start + 20, f"Shouldn't this use {term} instead?")
            editor = answerer if rng.random() < 0.95 else user + 7
            delay = int(rng.expovariate(1 / 600)) + 1
            d.version(a, 2, editor, start + 20 + delay, [code + f"\nresult = {term}(value)"])
            if conf:
                ann.append((a, c, 1, int(i in tangled_set), int(useful), cat))
            else:
                ann.append((a, c, 0, "", "", ""))
    d.write(out)
    ann.sort()
    write_csv(out / "annotations.csv",
              ["answer_id", "comment_id", "confirmed", "tangled", "useful", "category"], ann)


# --------------------------------------------------------------- mini corpus

def gen_mini(out):
    rng = random.Random(7)
    d = Dump()
    gt, ann = [], []
    next_post = 700000
    user = 90000
    for n in range(40):
        tag = TAGS[n % len(TAGS)]
        q, a = next_post, next_post + 1
        next_post += 2
        asker, answerer, third = user, user + 1, user + 2
        user += 3
        start = n * 1000
        d.question(q, asker, tag, start)
        if n == 39:
            # question-only comment and a codeless answer, both skipped by ingest
            d.comment(q, third, start + 2, "Which version are you using?")
            d.answer(a, q, answerer, tag, start + 5)
            d.version(a, 1, answerer, start + 5, [])
            d.version(a, 2, answerer, start + 50, [])
            continue
        d.answer(a, q, answerer, tag, start + 5, score=rng.randrange(0, 30))
        terms = [term_for(rng) for _ in range(3)]
        code = [f"{terms[0]}(config);"]
        d.version(a, 1, answerer, start + 5, list(code))
        minute = start + 5
        for k in range(2, rng.randrange(3, 6)):
            minute += rng.randrange(5, 60)
            added = terms[k % 3]
            editor = answerer if rng.random() < 0.85 else third
            if rng.random() < 0.7:
                author = rng.choice([asker, third])
                target = added
                exact = rng.random() < 0.6
                if not exact:
                    target = target[:-1] + ("x" if target[-1] != "x" else "y")  # near miss
                text = rng.choice([f"Use `{target}` here.", f"{target} is missing.",
                                   f"Why not {target}(config) instead?"])
                cid = d.comment(a, author, minute, text)
                gt.append((a, cid, k))
                if exact and editor == answerer:
                    label = rng.random()
                    if label < 0.9:
                        ann.append((a, cid, 1, int(label < 0.2), int(label < 0.5),
                                    CATEGORIES[rng.randrange(len(CATEGORIES))]))
                    else:
                        ann.append((a, cid, 0, "", "", ""))
            if rng.random() < 0.2:
                d.comment(a, rng.choice([asker, third]), minute + 1, rng.choice(PLAIN_COMMENTS))
            minute += rng.randrange(5, 60)
            code.append(f"{added}(config, {k});")
            d.version(a, k, editor, minute, list(code))
    d.write(out)
    write_csv(out / "ground_truth.csv", ["answer_id", "comment_id", "edit_version"], sorted(gt))
    write_csv(out / "annotations.csv",
              ["answer_id", "comment_id", "confirmed", "tangled", "useful", "category"], sorted(ann))


def main():
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "fixtures"
    gen_renamed_variable(root / "renamed_variable")
    gen_localstorage(root / "localstorage")
    gen_utf8(root / "utf8")
    gen_ground_truth(root / "ground_truth")
    gen_annotated(root / "annotated")
    gen_mini(root / "mini")


if __name__ == "__main__":
    main()
