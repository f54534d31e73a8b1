#!/usr/bin/env python3
"""Regenerates the fixture files under fixtures/.

The outputs are committed; rerun only when changing the fixtures:

    python3 tools/gen_fixtures.py fixtures
"""
import json
import random
import sys
from itertools import combinations
from pathlib import Path

FIVE = [
    ("Abdul Razak Hamdan", 85),
    ("Abdullah Mohd Zin", 90),
    ("Shahrul Azman Mohd Noah", 134),
    ("Tengku Mohd Tengku Sembok", 189),
    ("Md Jan Nordin", 41),
]
BENCHMARK_NODES = 67
BENCHMARK_EDGES = 253

GIVEN = ["Ahmad", "Aziz", "Faridah", "Hafiz", "Halimah", "Ismail", "Kamal", "Latifah", "Masnizah", "Nazlia",
         "Noraini", "Rosmah", "Salleh", "Suhaila", "Zulkifli", "Azuraliza", "Mohd Juzaiddin", "Siti Norul",
         "Nor Samsiah", "Zalinda", "Hamid", "Rusli", "Tengku Siti", "Riza", "Khairuddin", "Maryati", "Rohana",
         "Nazri", "Sabrina", "Jamaiah"]
FAMILY = ["Abdullah", "Ahmad", "Bakar", "Daud", "Hamzah", "Hassan", "Ibrahim", "Ismail", "Jaafar", "Kassim",
          "Mahmud", "Mansor", "Mohamad", "Mustafa", "Omar", "Rahman", "Razali", "Saad", "Salleh", "Sulaiman",
          "Yusof", "Zainal", "Othman", "Musa", "Idris"]

VENUES = ["Journal of Information Science", "Knowledge Based Systems", "Conference on Semantic Technology",
          "International Conference on Informatics", "Asia Information Retrieval Symposium",
          "Journal of Computer Science", "Pattern Recognition Letters", "Expert Systems with Applications"]
TITLE_WORDS = ["ontology", "retrieval", "semantic", "fuzzy", "clustering", "malay", "stemming", "query",
               "expansion", "network", "extraction", "classification", "rough", "sets", "text", "mining",
               "image", "segmentation", "knowledge", "management", "genetic", "algorithm", "web", "search"]

ACADEMIC = {
    "Abdul Razak Hamdan": ["data mining", "rough set", "dean", "knowledge discovery", "decision support"],
    "Abdullah Mohd Zin": ["programming", "software", "education", "computer science", "curriculum"],
    "Shahrul Azman Mohd Noah": ["information retrieval", "ontology", "semantic web", "knowledge management",
                                "digital library"],
    "Tengku Mohd Tengku Sembok": ["malay stemming", "information retrieval", "quran", "text retrieval",
                                  "natural language"],
    "Md Jan Nordin": ["image processing", "computer vision", "segmentation", "pattern recognition", "biometrics"],
}
NAMESAKE_TOPICS = [
    ["football", "league", "striker", "coach", "stadium"],
    ["restaurant", "recipe", "chef", "kitchen", "menu"],
    ["election", "parliament", "party", "minister", "constituency"],
    ["property", "estate", "developer", "housing", "loan"],
]
ACADEMIC_HOSTS = ["www.ftsm.ukm.my", "ukm.academia.edu", "dblp.uni-trier.de", "scholar.example.org"]
NAMESAKE_HOSTS = ["sports.example.com", "food.example.net", "news.example.my", "estate.example.com"]
FILLER = ["page", "profile", "details", "update", "information", "about", "contact", "report", "home", "list",
          "archive", "year", "latest", "view", "related", "more"]


def synthetic_names(rng, count, taken):
    names = []
    pool = [f"{g} {f}" for g in GIVEN for f in FAMILY]
    rng.shuffle(pool)
    for name in pool:
        if name in taken:
            continue
        names.append(name)
        if len(names) == count:
            break
    return names


def benchmark(rng, out):
    people = [n for n, _ in FIVE] + synthetic_names(rng, BENCHMARK_NODES - len(FIVE), {n for n, _ in FIVE})
    pairs = set()
    records = []

    def add_record(authors):
        rid = f"rec{len(records) + 1:04d}"
        title = " ".join(rng.sample(TITLE_WORDS, 4)).capitalize()
        records.append({"id": rid, "title": title, "authors": authors, "venue": rng.choice(VENUES),
                        "year": rng.randint(2001, 2011)})

    # Known collaborations among the five named actors.
    for i, j in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)]:
        add_record([people[i], people[j]])
        pairs.add(frozenset((people[i], people[j])))
    # A spanning chain so nobody is isolated.
    order = people[:]
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):
        add_record([a, b])
        pairs.add(frozenset((a, b)))
    while len(pairs) < BENCHMARK_EDGES:
        size = rng.choice([2, 2, 2, 3, 3, 4])
        authors = rng.sample(people, size)
        new = {frozenset(p) for p in combinations(authors, 2)} - pairs
        if not new or len(pairs) + len(new) > BENCHMARK_EDGES:
            continue
        add_record(authors)
        pairs |= new
    # Repeat collaborations and solo papers; these add no new pairs.
    existing = [tuple(sorted(p)) for p in sorted(pairs, key=lambda p: tuple(sorted(p)))]
    for _ in range(40):
        add_record(list(rng.choice(existing)))
    for _ in range(15):
        add_record([rng.choice(people)])
    assert len(pairs) == BENCHMARK_EDGES

    with open(out / "benchmark" / "dblp67.jsonl", "w") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")
    with open(out / "benchmark" / "dblp67.bib", "w") as f:
        for r in records:
            venue_field = "journal" if "Journal" in r["venue"] else "booktitle"
            f.write(f"@article{{{r['id']},\n  author = {{{' and '.join(r['authors'])}}},\n"
                    f"  title = {{{r['title']}}},\n  {venue_field} = {{{r['venue']}}},\n  year = {r['year']}\n}}\n\n")
    with open(out / "benchmark" / "dblp67_seeds.txt", "w") as f:
        f.write("# 67 benchmark persons\n")
        for p in people:
            f.write(p + "\n")
    with open(out / "benchmark" / "dblp67_benchmark.tsv", "w") as f:
        for a, b in existing:
            f.write(f"{a}\t{b}\n")
    return people, pairs


def five_names(rng, out, pairs):
    docs = []
    truth = {name: {} for name, _ in FIVE}
    names = [n for n, _ in FIVE]
    colleagues = {n: [m for m in names if m != n and frozenset((n, m)) in pairs] or [m for m in names if m != n]
                  for n in names}

    def url_for(host, persona_index, i):
        depth = rng.randint(0, 3)
        segments = [rng.choice(["staff", "people", "news", "pub", "profile", "en"]) for _ in range(depth)]
        path = "/".join(segments + [f"page{i % 7}.html"]) if depth else ""
        scheme = "https" if rng.random() < 0.3 else "http"
        shown = host.upper() if rng.random() < 0.1 else host
        port = ":80" if scheme == "http" and rng.random() < 0.1 else ""
        query = f"?id={persona_index}&lang=en" if rng.random() < 0.2 else ""
        frag = "#top" if rng.random() < 0.1 else ""
        return f"{scheme}://{shown}{port}/{path}{query}{frag}"

    counter = 0
    for name, count in FIVE:
        n_namesakes = 1 if count < 60 else 2
        topics = [ACADEMIC[name]] + rng.sample(NAMESAKE_TOPICS, n_namesakes)
        # About 70% of the pages are about the academic.
        weights = [0.7] + [0.3 / n_namesakes] * n_namesakes
        for i in range(count):
            counter += 1
            doc_id = f"d{counter:04d}"
            persona = rng.choices(range(len(topics)), weights)[0]
            hosts = ACADEMIC_HOSTS if persona == 0 else [NAMESAKE_HOSTS[NAMESAKE_TOPICS.index(topics[persona])]]
            host = rng.choice(hosts)
            words = []
            for _ in range(rng.randint(18, 30)):
                words.append(rng.choice(topics[persona]) if rng.random() < 0.35 else rng.choice(FILLER))
            pos = rng.randint(0, len(words))
            words.insert(pos, name)
            mentioned = {name: persona}
            if persona == 0 and rng.random() < 0.25:
                other = rng.choice(colleagues[name])
                words.insert(rng.randint(0, len(words)), "with " + other)
                mentioned[other] = 0
            body = " ".join(words) + "."
            title = f"{name} - {rng.choice(topics[persona]).title()}"
            docs.append({"id": doc_id, "url": url_for(host, persona, i), "title": title, "body": body,
                         "source_tag": "fixture"})
            for who, p in mentioned.items():
                truth[who].setdefault(p, []).append(doc_id)

    with open(out / "five_names" / "corpus.jsonl", "w") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")
    with open(out / "five_names" / "seeds.txt", "w") as f:
        for n in names:
            f.write(n + "\n")
    (out / "five_names" / "truth").mkdir(exist_ok=True)
    for n in names:
        slug = n.lower().replace(" ", "_")
        blocks = [truth[n][p] for p in sorted(truth[n])]
        with open(out / "five_names" / "truth" / f"{slug}.json", "w") as f:
            json.dump(blocks, f)
            f.write("\n")
    with open(out / "five_names" / "benchmark.tsv", "w") as f:
        for a, b in combinations(names, 2):
            if frozenset((a, b)) in pairs:
                f.write(f"{a}\t{b}\n")
    return docs


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    (out / "benchmark").mkdir(parents=True, exist_ok=True)
    (out / "five_names").mkdir(parents=True, exist_ok=True)
    rng = random.Random(20110915)
    people, pairs = benchmark(rng, out)
    docs = five_names(rng, out, pairs)
    print(f"benchmark: {len(people)} persons, {len(pairs)} pairs; corpus: {len(docs)} documents")


if __name__ == "__main__":
    main()
