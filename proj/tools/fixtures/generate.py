#!/usr/bin/env python3
"""Regenerates tests/fixtures/ and data/lexicons/headlines.tsv.

Everything is drawn from one seeded RNG, so the output is reproducible:

    python3 tools/fixtures/generate.py

The expectations that tests compare against (pruned articles, the planted
duplicate, edge ledgers, gold quote labels) are written next to the data by
the same code that constructs it.
"""

import json
import math
import pathlib
import random
import re

ROOT = pathlib.Path(__file__).resolve().parents[2]
OUT = ROOT / "tests" / "fixtures"
LEXICONS = ROOT / "data" / "lexicons"
SEED = 20240611
DIM = 50

rng = random.Random(SEED)

# --- vocabulary -----------------------------------------------------------------

TOPICS = {
    "sleep": "sleep insomnia melatonin circadian nap bedtime drowsiness rest wakefulness dreaming snoring apnea slumber night alertness",
    "coffee": "coffee caffeine espresso beverage brew cups roast arabica stimulant drinkers mug latte bean decaf barista",
    "climate": "climate warming emissions carbon glacier temperature greenhouse heatwave drought ocean ice methane atmosphere rainfall flooding",
    "diet": "diet vegetables fiber sugar calories obesity nutrition fruit salt cholesterol meal snack weight vitamin breakfast",
    "exercise": "exercise running fitness muscles workout cardio walking marathon strength training jogging stamina treadmill cycling gym",
    "genes": "gene genome mutation dna sequencing heredity chromosome variant inherited genetic allele editing cells enzyme embryo",
    "vaccines": "vaccine immunity antibodies virus infection booster dose pathogen immune outbreak measles influenza jab pandemic transmission",
    "screens": "screen smartphone teenagers apps gaming tablets online notifications scrolling device internet texting video messaging feeds",
    "space": "planet telescope galaxy asteroid orbit star exoplanet comet mars moon solar cosmic rocket nebula gravity",
    "bees": "bees pollinators honey hive pesticide flowers colony nectar insects pollen crops wasps apiary beekeepers meadow",
}
TOPICS = {k: v.split() for k, v in TOPICS.items()}

REPORTING = ("say claim prove analyze find show report suggest argue conclude "
             "state note explain warn add estimate observe emphasize reveal indicate demonstrate confirm "
             "predict caution acknowledge insist contend assert declare announce remark comment mention "
             "stress write tell speculate hypothesize").split()
STUDY = ("study survey analysis research trial paper experiment review investigation assessment poll "
         "evaluation audit inquiry census examination findings dataset project publication thesis "
         "dissertation appraisal probe questionnaire cohort simulation modelling metaanalysis").split()
SCIENTIST = ("researcher scientist analyst expert author professor physician doctor epidemiologist biologist "
             "economist physicist chemist geologist psychologist ecologist statistician engineer specialist "
             "investigator scholar neuroscientist astronomer climatologist nutritionist geneticist virologist "
             "immunologist oncologist pharmacologist sociologist").split()

SURNAMES = ("Okafor Lindqvist Moreau Tanaka Kowalski Haddad Brennan Castillo Novak Ferreira Achterberg Delgado "
            "Sato Whitfield Ivanova Mbeki Larsen Quinlan Varga Ortega Nakamura Holloway Petrov Abernathy").split()
GIVEN = ("laura david maria james sarah michael emma daniel anna thomas julia peter helen richard claire "
         "robert susan mark rachel simon").split()
CITIES = "Oslo Leeds Utrecht Geneva Toronto Adelaide Kyoto Lisbon Bristol Uppsala Bergen Zurich".split()
MONTHS = "January February March April May June July August September October November December".split()

SCIENCE_DOMAINS = ["nature.com", "science.org", "thelancet.com", "nejm.org", "plos.org", "bmj.com"]
OUTSIDE_DOMAINS = ["paperdump.net", "preprintmirror.org"]
KEYWORDS = ["study", "research", "scientists", "researchers", "science", "journal", "findings", "trial"]

OUTLETS = [
    ("sciencedesk.com", 5, 1200),
    ("evidencewire.org", 5, 3400),
    ("thedailyclimate.net", 4, 8800),
    ("newsworld.com", 3, 560),
    ("trendbuzz.com", 2, 15000),
    ("viralhealth.co.uk", 1, 42000),
    ("quickclicks.net", 1, None),
]
COPY_OUTLET = "copycatnews.info"  # deliberately missing from the outlet table


def person():
    return f"{rng.choice(GIVEN).title()} {rng.choice(SURNAMES)}"


def org():
    city = rng.choice(CITIES)
    return rng.choice([f"University of {city}", f"{city} Institute of Health", f"{city} Medical Center"])


def date():
    return f"{rng.choice(MONTHS)} {rng.randint(2015, 2021)}"


def pick(words, n):
    return rng.sample(words, n)


# --- papers -----------------------------------------------------------------------

def make_paper(i, topic, domain):
    kw = TOPICS[topic]
    authors = [person(), person()]
    institution = org()
    n = rng.randint(300, 9000)
    pct = rng.randint(8, 64)
    when = date()
    a, b, c, d, e, f = pick(kw, 6)
    title = f"Association between {a} and {b} in a cohort of {n} adults"
    paras = [
        f"We examined {a} and {b} among {n} adults recruited at the {institution} in {when}. "
        f"Participants reported {c} and {d} patterns over twelve months. "
        f"Exposure to {e} was measured with validated instruments.",
        f"Higher {a} was associated with a {pct}% change in {b}. "
        f"The association persisted after adjustment for {f}, age and income. "
        f"Effects were larger among participants with frequent {c}.",
        f"These results suggest that {a} may influence {b} through {d}. "
        f"Further trials should test whether reducing {e} changes {f}. "
        f"Correspondence to {authors[0]} and {authors[1]}.",
    ]
    return {
        "id": f"paper{i:02d}",
        "url": f"https://www.{domain}/articles/{topic}-{i:02d}",
        "domain": domain,
        "title": title,
        "body": "\n\n".join(paras),
        "parse_ok": True,
        "_topic": topic,
        "_authors": authors,
        "_org": institution,
        "_n": n,
        "_pct": pct,
        "_when": when,
        "_kw": [a, b, c, d, e, f],
    }


# --- articles ---------------------------------------------------------------------

LEADS = [
    "A large new study links {a} to {b}, with a {pct}% difference reported among {n} adults.",
    "People with more {a} showed a {pct}% change in {b}, according to research published this week.",
    "Scientists tracking {n} volunteers since {when} say {a} and {b} move together.",
    "{a_cap} could shape {b} in ways few expected, researchers at the {org} found.",
    "The link between {a} and {b} is stronger than thought, says a team at the {org}.",
]
BODIES = [
    "The team followed {n} adults and recorded their {c} and {d} habits for a year.",
    "Volunteers kept diaries about {c}, and the researchers compared them with measures of {b}.",
    "Those with the most {a} had a {pct}% shift in {b} over the period.",
    "The effect held after the authors accounted for {f}, age and income.",
    "Participants who reported frequent {c} saw the largest changes.",
    "The work began in {when} at the {org}.",
    "Earlier work on {e} had hinted at a similar pattern.",
    "It remains unclear whether cutting {e} would change {f}.",
]
QUOTES = [
    "“We were surprised by how consistent the {a} effect was,” said {author}, who led the work at the {org}.",
    "“This does not mean everyone should change their {c},” {author} added.",
    "{author}, a researcher at the {org}, said that the {pct}% figure should be read with care.",
    "\"The {b} signal was clear in every subgroup,\" said {author}.",
]
WEASEL = [
    "Experts warned that the findings on {a} may not apply to children.",
    "Some scientists argue that {e} explains much of the effect.",
    "Critics noted that the {b} measures were self-reported.",
]
FILLER = [
    "{a_cap} has been a popular topic on social media for years.",
    "Sales of products related to {c} rose sharply last year.",
    "Many readers will recognise the pattern from their own lives.",
    "The {d} debate is unlikely to end soon.",
]
TITLES_GOOD = [
    "{a_cap} linked to {b} in large cohort",
    "How {a} shapes {b}: what the new data show",
    "{n} adults, one question: does {a} change {b}?",
]
TITLES_BAIT = [
    "You won't believe what {a} does to your {b}",
    "This one {c} trick will change your {b} forever",
    "Doctors hate this {a} secret",
]


def fill(template, p):
    a, b, c, d, e, f = p["_kw"]
    return template.format(a=a, b=b, c=c, d=d, e=e, f=f, a_cap=a.capitalize(), n=p["_n"], pct=p["_pct"],
                           when=p["_when"], org=p["_org"], author=rng.choice(p["_authors"]))


def make_article(aid, outlet, tier, paper, out_links, slug):
    richness = {5: (5, 2, 0), 4: (4, 2, 1), 3: (3, 1, 1), 2: (2, 1, 2), 1: (2, 0, 3)}[tier]
    n_body, n_quotes, n_filler = richness
    title = fill(rng.choice(TITLES_GOOD if tier >= 3 else TITLES_BAIT), paper)
    paras = [fill(rng.choice(LEADS), paper)]
    paras += [fill(t, paper) for t in rng.sample(BODIES, n_body)]
    paras += [fill(t, paper) for t in rng.sample(QUOTES, n_quotes)]
    if rng.random() < 0.6:
        paras.append(fill(rng.choice(WEASEL), paper))
    paras += [fill(t, paper) for t in rng.sample(FILLER, n_filler)]
    return {
        "id": aid,
        "url": f"https://{outlet}/{paper['_topic']}/{slug}",
        "outlet": outlet,
        "title": title,
        "byline": person() if tier >= 3 else None,
        "paragraphs": paras,
        "out_links": out_links,
        "parse_ok": True,
    }


def plain_article(aid, outlet, topic, slug, out_links):
    kw = TOPICS[topic]
    a, b, c = pick(kw, 3)
    paras = [
        f"Our columnist tried a month of {a} and {b}.",
        f"The first week was hard, mostly because of {c}.",
        f"By the end, the {a} routine felt normal.",
    ]
    return {
        "id": aid,
        "url": f"https://{outlet}/{topic}/{slug}",
        "outlet": outlet,
        "title": f"My month of {a}",
        "byline": None,
        "paragraphs": paras,
        "out_links": out_links,
        "parse_ok": True,
    }


def bag(article):
    words = re.findall(r"[a-z]+", " ".join([article["title"]] + article["paragraphs"]).lower())
    out = {}
    for w in words:
        out[w] = out.get(w, 0) + 1
    return out


def cosine(x, y):
    dot = sum(v * y.get(k, 0) for k, v in x.items())
    return dot / math.sqrt(sum(v * v for v in x.values()) * sum(v * v for v in y.values()))


# --- corpus -----------------------------------------------------------------------

def build_corpus():
    topics = list(TOPICS)
    papers = [make_paper(i, topics[i % len(topics)], SCIENCE_DOMAINS[i % len(SCIENCE_DOMAINS)]) for i in range(18)]
    papers += [make_paper(18 + j, topics[j], OUTSIDE_DOMAINS[j]) for j in range(2)]

    outlets = [o for o in OUTLETS]
    articles = []
    single_paper = []

    def outlet_for(k):
        return outlets[k % len(outlets)]

    k = 0
    for i in range(18):
        domain, tier, _ = outlet_for(k)
        links = [papers[i]["url"]]
        if tier >= 4:
            links.append(f"https://www.{papers[i]['domain']}/subjects/{papers[i]['_topic']}")
        art = make_article(f"art{k:02d}", domain, tier, papers[i], links, f"story-{k:02d}")
        articles.append(art)
        single_paper.append(art["id"])
        k += 1
    for i in range(3):
        domain, tier, _ = outlet_for(k)
        art = make_article(f"art{k:02d}", domain, tier, papers[i], [papers[i]["url"]], f"story-{k:02d}")
        articles.append(art)
        single_paper.append(art["id"])
        k += 1
    two_paper = []
    for i, j in [(3, 4), (5, 6)]:
        domain, tier, _ = outlet_for(k)
        art = make_article(f"art{k:02d}", domain, tier, papers[i],
                           [papers[i]["url"], papers[j]["url"], papers[19]["url"]], f"story-{k:02d}")
        articles.append(art)
        two_paper.append(art["id"])
        k += 1
    domain_only = []
    for i in range(2):
        domain, tier, _ = outlet_for(k)
        p = papers[7 + i]
        art = make_article(f"art{k:02d}", domain, tier, p, [f"https://www.nature.com/subjects/{p['_topic']}"],
                           f"story-{k:02d}")
        articles.append(art)
        domain_only.append(art["id"])
        k += 1
    reference_free = []
    for i in range(3):
        domain, _, _ = outlet_for(k)
        links = [] if i == 0 else [f"https://{outlet_for(k + 1)[0]}/archive/{i}"]
        art = plain_article(f"art{k:02d}", domain, topics[i], f"column-{k:02d}", links)
        articles.append(art)
        reference_free.append(art["id"])
        k += 1
    # Cites only a paper hosted outside the science allowlist.
    domain, tier, _ = outlet_for(k)
    art = make_article(f"art{k:02d}", domain, tier, papers[18], [papers[18]["url"]], f"story-{k:02d}")
    articles.append(art)
    reference_free.append(art["id"])
    k += 1

    # Planted near-duplicate of art00: one word changed, fewer out-links.
    original = articles[0]
    dup = json.loads(json.dumps(original))
    dup["id"] = "art99"
    dup["outlet"] = COPY_OUTLET
    dup["url"] = f"https://{COPY_OUTLET}/copied/{original['id']}"
    dup["byline"] = None
    dup["paragraphs"][-1] = dup["paragraphs"][-1].replace(" the ", " this ", 1)
    dup["out_links"] = original["out_links"][:1]
    articles.append(dup)
    assert len(original["out_links"]) > len(dup["out_links"])
    assert cosine(bag(original), bag(dup)) > 0.9

    for x in range(len(articles)):
        for y in range(x + 1, len(articles)):
            if {articles[x]["id"], articles[y]["id"]} == {"art00", "art99"}:
                continue
            sim = cosine(bag(articles[x]), bag(articles[y]))
            assert sim < 0.9, (articles[x]["id"], articles[y]["id"], sim)

    # Postings.
    postings = []
    replies = []
    pid = 0
    base_ts = 1_600_000_000

    def add_posting(text, urls, ts, with_replies=True):
        nonlocal pid
        p = {
            "id": f"tw{pid:03d}",
            "author_id": f"user{rng.randint(1, 60):02d}",
            "text": text,
            "urls": urls,
            "likes": rng.randint(0, 40),
            "retweets": rng.randint(0, 15),
            "followers": rng.randint(10, 20000),
            "followees": rng.randint(10, 2000),
            "country": rng.choice(["US", "GB", "DE", "FR", "IN", "CA", "AU", None]),
            "timestamp": ts,
            "reply_ids": [],
        }
        pid += 1
        postings.append(p)
        if with_replies:
            for _ in range(rng.choice([0, 0, 1, 2])):
                r = {"id": f"re{len(replies):03d}", "parent_id": p["id"], "text": stance_text(rng.choice(STANCES),
                     rng.choice(TOPICS[rng.choice(list(TOPICS))]))[0],
                     "likes": rng.randint(0, 10), "retweets": rng.randint(0, 3)}
                replies.append(r)
                p["reply_ids"].append(r["id"])
        return p["id"]

    posting_targets = {}
    for idx, art in enumerate(articles):
        n_post = 2 if art["id"] in reference_free else 3
        if art["id"] == "art99":
            n_post = 3
        for j in range(n_post):
            kw = rng.choice(KEYWORDS)
            url = art["url"]
            if j == 1:
                # Same page, different spelling: upper-case host and a trailing slash.
                head, _, path = url.partition("://")
                host, _, rest = path.partition("/")
                url = f"{head.upper()}://{host.upper()}/{rest}/"
            text = rng.choice([
                f"New {kw} on {art['title'].lower()} {url}",
                f"Interesting {kw}: {art['title']} {url}",
                f"{art['title']} - worth reading for the {kw} alone {url}",
            ])
            ts = base_ts + idx * 86400 + j * rng.randint(1800, 40000)
            posted = add_posting(text, [url], ts)
            posting_targets[posted] = [art["id"]]
    # One posting shares both the original and its copy.
    both = add_posting(f"Same research, two sites {articles[0]['url']} {dup['url']}", [articles[0]["url"], dup["url"]],
                       base_ts + 5000)
    posting_targets[both] = ["art00", "art99"]
    # Filtered out: no keyword, or no URL.
    for j in range(4):
        add_posting(f"Look at this {articles[j + 3]['url']}", [articles[j + 3]["url"]], base_ts + 9000 + j)
    for j in range(2):
        add_posting(f"Great science day with friends {j}", [], base_ts + 9500 + j)
    # Keyword match but the URL is not a loaded article.
    unlinked = []
    for j in range(3):
        url = f"https://blog.example.org/post/{j}"
        unlinked.append(add_posting(f"Research roundup {j} {url}", [url], base_ts + 9900 + j))
    # Replies whose parent is not in the corpus.
    for j in range(2):
        replies.append({"id": f"re9{j:02d}", "parent_id": f"tw9{j:02d}", "text": "Source?", "likes": 0,
                        "retweets": 0})

    # Expected graph bookkeeping, derived from the construction above.
    pruned_postings = sorted(p for p, t in posting_targets.items() if all(a in reference_free for a in t))
    kept_articles = sorted(a["id"] for a in articles if a["id"] not in reference_free)
    posting_edges_before = sum(len([a for a in t]) for p, t in posting_targets.items() if p not in pruned_postings)
    rewired = sum(1 for p, t in posting_targets.items() if "art99" in t)
    collapsed = sum(1 for p, t in posting_targets.items() if "art99" in t and "art00" in t)
    expected = {
        "reference_free_articles": sorted(reference_free),
        "pruned_postings": pruned_postings,
        "unlinked_postings": unlinked,
        "articles_after_prune": kept_articles,
        "duplicate_pair": ["art00", "art99"],
        "survivor": "art00",
        "posting_edges_before_merge": posting_edges_before,
        "posting_edges_rewired": rewired,
        "posting_edges_after_merge": posting_edges_before - collapsed,
        "single_paper_articles": sorted(single_paper),
        "two_paper_articles": sorted(two_paper),
        "domain_only_articles": sorted(domain_only),
        "papers_outside_allowlist": 2,
    }
    return papers, articles, postings, replies, expected


# --- stance -----------------------------------------------------------------------

STANCES = ["supporting", "commenting", "contradicting", "questioning"]

SUPPORT = [
    "Great work, this is really important {w} research!",
    "Excellent and convincing, I agree with every word on {w}!",
    "Love this, such a helpful and clear piece about {w}.",
    "Brilliant {w} findings, thanks for sharing!",
    "This is impressive and encouraging news for {w}.",
    "Fascinating, {w} is finally getting the attention it deserves!",
]
COMMENT = [
    "My grandmother always said the same thing about {w}.",
    "Reading this on the train this morning, {w} again.",
    "Here is the full text for anyone curious https://example.org/{w}",
    "We discussed {w} in class last week.",
    "Related thread on {w} from last year https://example.net/t/{w}",
    "Saving this one for later, {w} is my thesis topic.",
]
CONTRA = [
    "This is wrong, the {w} data do not show that at all.",
    "Misleading headline, no evidence that {w} matters here.",
    "Bogus {w} claims again, the sample is tiny and flawed.",
    "Nope, that is not what the {w} paper says. Terrible reporting.",
    "Junk science about {w}, never trust these exaggerated stories.",
    "False. The {w} effect disappeared in every replication.",
]
QUESTION = [
    "Is there any {w} source for this?",
    "Wait, how did they measure {w}?",
    "Does this hold for children too? What about {w}?",
    "Who funded this {w} study?",
    "Really? Where is the {w} control group?",
    "Can someone explain the {w} part?",
]
UNRELATED = [
    "Happy birthday to my brother!",
    "Traffic on the bridge is awful today.",
    "Who is watching the match tonight?",
]
TEMPLATES = {"supporting": SUPPORT, "commenting": COMMENT, "contradicting": CONTRA, "questioning": QUESTION}


def stance_text(stance, word):
    # One in eight replies borrows a template from another class, so the
    # labelled set is not trivially separable.
    source = stance
    if rng.random() < 0.125:
        source = rng.choice([s for s in STANCES if s != stance])
    return rng.choice(TEMPLATES[source]).format(w=word), source


def build_stance():
    parents = []
    replies = []
    labels = []
    for i in range(60):
        topic = list(TOPICS)[i % len(TOPICS)]
        a, b = pick(TOPICS[topic], 2)
        parents.append({
            "id": f"sp{i:03d}", "author_id": f"outlet{i % 7}", "text": f"New study links {a} and {b} https://news.example.com/{i}",
            "urls": [f"https://news.example.com/{i}"], "likes": rng.randint(0, 50), "retweets": rng.randint(0, 20),
            "followers": rng.randint(100, 50000), "followees": rng.randint(10, 500), "country": "US",
            "timestamp": 1_600_000_000 + i * 3600, "reply_ids": [],
        })
    n = 0
    for stance in STANCES:
        for _ in range(65):
            parent = rng.choice(parents)
            word = rng.choice(re.findall(r"[a-z]+", parent["text"])[3:5])
            text, _ = stance_text(stance, word)
            rid = f"sr{n:03d}"
            n += 1
            replies.append({"id": rid, "parent_id": parent["id"], "text": text, "likes": rng.randint(0, 9),
                            "retweets": rng.randint(0, 4)})
            parent["reply_ids"].append(rid)
            labels.append((rid, stance))
    for j in range(20):
        parent = rng.choice(parents)
        rid = f"sr{n:03d}"
        n += 1
        replies.append({"id": rid, "parent_id": parent["id"], "text": rng.choice(UNRELATED), "likes": 0,
                        "retweets": 0})
        parent["reply_ids"].append(rid)
        labels.append((rid, "not-related"))
    rng.shuffle(labels)
    return parents, replies, labels


# --- quote fixture ------------------------------------------------------------------

# Each paragraph is a single sentence; gold marks paragraph indices that
# report what a source said, found or claimed.
DIRECT = [
    ("“The {a} result held in every group we tested,” said {p}.", "named_person"),
    ("\"We did not expect the {b} effect to be this large,\" {p} said.", "named_person"),
    ("“It is too early to change any {a} advice,” the {o} said in a statement.", "organization"),
    ("\"The {b} numbers speak for themselves,\" {p} told reporters.", "named_person"),
]
INDIRECT_PERSON = [
    ("{p}, a researcher at the {o}, said that the {a} effect was modest.", "named_person"),
    ("{p} argued that the {b} data were too noisy to draw firm conclusions.", "named_person"),
    ("{p} noted that earlier work on {a} had used smaller samples.", "named_person"),
    ("{p} explained that the {b} changes appeared within weeks.", "named_person"),
]
STUDY_Q = [
    ("The study found that {a} was linked to lower {b}.", "unnamed_study"),
    ("A new survey shows that most adults underestimate their {a}.", "unnamed_study"),
    ("The analysis suggests that {b} rises with age.", "unnamed_study"),
    ("The paper concludes that {a} deserves a larger trial.", "unnamed_study"),
]
SCIENTIST_Q = [
    ("Researchers warned that the {a} findings may not generalize.", "unnamed_scientist"),
    ("Epidemiologists cautioned that {b} is hard to measure.", "unnamed_scientist"),
    ("Scientists believe that {a} and {b} share a common cause.", "unnamed_scientist"),
    ("Experts stress that the {b} effect is small for most people.", "unnamed_scientist"),
]
ACCORDING = [
    ("According to the {o}, {a} rates doubled over the decade.", "organization"),
    ("According to {p}, the {b} link is stronger in older adults.", "named_person"),
]
HARD = [
    ("In her view, the {a} trend is overstated.", "named_person"),
    ("For the authors of the report, the {b} signal is real but small.", "unnamed_study"),
]
NEUTRAL = [
    "The city council met on Tuesday to discuss the {a} budget.",
    "Sales of {b} products rose in the third quarter.",
    "The weather in the region was mild for most of the spring.",
    "Local schools will reopen on Monday after the holiday.",
    "A new {a} shop opened near the station last month.",
    "Tickets for the autumn festival went on sale this morning.",
    "The bridge over the river will close for repairs in May.",
    "Commuters faced long delays on the northern line.",
    "The museum added a wing devoted to {b} history.",
    "Farmers expect a good harvest after the rain.",
]


def build_quotes():
    records = []
    for i in range(20):
        topic = list(TOPICS)[i % len(TOPICS)]
        kw = TOPICS[topic]
        people = [person(), person()]
        o = org()
        items = []
        items += [(t, k, True) for t, k in rng.sample(DIRECT, 2)]
        items += [(t, k, True) for t, k in rng.sample(INDIRECT_PERSON, 2)]
        items += [(t, k, True) for t, k in rng.sample(STUDY_Q, 1)]
        items += [(t, k, True) for t, k in rng.sample(SCIENTIST_Q, 1)]
        if i % 2 == 0:
            items += [(t, k, True) for t, k in rng.sample(ACCORDING, 1)]
        if i % 4 == 0:
            items += [(t, k, True) for t, k in rng.sample(HARD, 1)]
        items += [(t, None, False) for t in rng.sample(NEUTRAL, 4)]
        rng.shuffle(items)
        # The first mention of a person uses the full name, later ones may
        # use the surname only.
        paras, gold, kinds = [], [], []
        named = False
        for t, kind, is_quote in items:
            a, b = pick(kw, 2)
            p = rng.choice([people[0], people[0].split()[1]]) if named else people[0]
            named = named or "{p}" in t
            text = t.format(a=a, b=b, p=p, o=o)
            if is_quote:
                gold.append(len(paras))
                kinds.append(kind)
            paras.append(text[0].upper() + text[1:])
        records.append({
            "id": f"q{i:02d}",
            "url": f"https://newsworld.com/quotes/q{i:02d}",
            "outlet": "newsworld.com",
            "title": f"What we know about {kw[0]}",
            "byline": person(),
            "paragraphs": paras,
            "out_links": [],
            "parse_ok": True,
            "gold_quotes": gold,
            "gold_kinds": kinds,
            "people": people,
            "org": o,
        })
    return records


# --- headlines ----------------------------------------------------------------------

BAIT_TEMPLATES = [
    "You won't believe what {x} does to your {y}",
    "{n} reasons why {x} is ruining your {y}",
    "This simple {x} trick will change your {y} forever",
    "What happens next with {x} will shock you",
    "Doctors hate this one {x} secret",
    "{n} things nobody tells you about {x}",
    "Here's why everyone is talking about {x}",
    "The {x} hack that went viral this week",
    "I tried {x} for a week and this is what happened",
    "Only geniuses can spot the {x} in this photo",
    "Stop doing this with your {y} right now",
    "{n} {x} mistakes you are probably making",
]
NEWS_TEMPLATES = [
    "Council approves funding for {x} programme",
    "{x} exports fell by {n} percent in March",
    "Government publishes review of {x} policy",
    "Researchers report decline in {x} across Europe",
    "Regulator opens inquiry into {x} pricing",
    "Parliament debates changes to {x} rules",
    "{x} prices steady as markets await data",
    "Court rules on {x} dispute between neighbours",
    "Hospital trust announces new {x} service",
    "Ministers meet to discuss {x} shortages",
    "Survey finds rise in {x} among older adults",
    "Union calls strike over {x} contracts",
]
HEAD_X = ("coffee sleep sugar walking honey smartphones vitamins gardening cheese salt running tea apples "
          "bread email stress water chocolate meditation eggs noodles laundry housing rail energy wheat").split()
HEAD_Y = "brain skin sleep diet mornings weekend phone health marriage back".split()


def build_headlines():
    rows = []
    seen = set()
    while len(rows) < 600:
        bait = len(rows) % 2 == 0
        t = rng.choice(BAIT_TEMPLATES if bait else NEWS_TEMPLATES)
        text = t.format(x=rng.choice(HEAD_X), y=rng.choice(HEAD_Y), n=rng.randint(3, 15))
        text = text[0].upper() + text[1:]
        if text in seen:
            continue
        seen.add(text)
        rows.append(("clickbait" if bait else "news", text))
    return rows


# --- embeddings ---------------------------------------------------------------------

def unit(v):
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def gaussian():
    return [rng.gauss(0.0, 1.0) for _ in range(DIM)]


def build_embeddings(texts):
    stop = {w.strip() for w in (LEXICONS / "stopwords.txt").read_text().splitlines()
            if w.strip() and not w.startswith("#")}
    vectors = {}
    clusters = [("reporting", REPORTING), ("study", STUDY), ("scientist", SCIENTIST)]
    clusters += [(name, words) for name, words in TOPICS.items()]
    for _, words in clusters:
        centre = unit(gaussian())
        for w in words:
            noise = unit(gaussian())
            vectors.setdefault(w, unit([c + 0.5 * n for c, n in zip(centre, noise)]))
    for text in texts:
        for w in re.findall(r"[a-z]+", text.lower()):
            if w in stop or len(w) < 2 or w in vectors:
                continue
            vectors[w] = unit(gaussian())
    return vectors


# --- writing ----------------------------------------------------------------------

def write_jsonl(path, records):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as f:
        for r in records:
            f.write(json.dumps({k: v for k, v in r.items() if not k.startswith("_")}, ensure_ascii=False) + "\n")


def write_text(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def main():
    papers, articles, postings, replies, expected = build_corpus()
    stance_parents, stance_replies, stance_labels = build_stance()
    quote_articles = build_quotes()
    headlines = build_headlines()

    write_jsonl(OUT / "corpus" / "papers.jsonl", papers)
    write_jsonl(OUT / "corpus" / "articles.jsonl", articles)
    write_jsonl(OUT / "corpus" / "postings.jsonl", postings)
    write_jsonl(OUT / "corpus" / "replies.jsonl", replies)
    write_text(OUT / "corpus" / "expected.json", json.dumps(expected, indent=2) + "\n")
    write_text(OUT / "allowlist" / "domains.txt", "\n".join(SCIENCE_DOMAINS) + "\n")
    write_text(OUT / "allowlist" / "keywords.txt", "\n".join(KEYWORDS) + "\n")
    write_text(OUT / "outlets.tsv", "domain\ttier\talexa_rank\n" + "".join(
        f"{d}\t{t}\t{'' if r is None else r}\n" for d, t, r in OUTLETS))

    write_jsonl(OUT / "stance" / "postings.jsonl", stance_parents)
    write_jsonl(OUT / "stance" / "replies.jsonl", stance_replies)
    write_text(OUT / "stance" / "labels.tsv", "id\tlabel\n" + "".join(f"{i}\t{l}\n" for i, l in stance_labels))

    write_jsonl(OUT / "quotes" / "articles.jsonl", quote_articles)
    write_text(LEXICONS / "headlines.tsv", "label\ttitle\n" + "".join(f"{l}\t{t}\n" for l, t in headlines))

    # Two expert labels per article for a dozen surviving articles: gaps 0, 1 and 2+.
    served = [a["id"] for a in articles if a["id"] in expected["articles_after_prune"] and a["id"] != "art99"][:12]
    rows = []
    for n, aid in enumerate(served):
        first = rng.randint(2, 4)
        gap = [0, 1, 2][n % 3]
        second = first + gap if first + gap <= 5 else first - gap
        rows.append(f"{aid}\texpert_a\t{first}\n{aid}\texpert_b\t{second}\n")
    write_text(OUT / "expert_labels.tsv", "article_id\texpert_id\tscore\n" + "".join(rows))

    texts = [a["title"] + " " + " ".join(a["paragraphs"]) for a in articles + quote_articles]
    texts += [p["title"] + " " + p["body"] for p in papers]
    texts += [p["text"] for p in postings + stance_parents] + [r["text"] for r in replies + stance_replies]
    vectors = build_embeddings(texts)
    with (OUT / "embeddings.txt").open("w") as f:
        for w in sorted(vectors):
            f.write(w + " " + " ".join(f"{x:.5f}" for x in vectors[w]) + "\n")

    write_text(OUT / "config.toml", """\
# Mini-corpus pipeline configuration used by the tests.

[corpus]
postings = "corpus/postings.jsonl"
replies = "corpus/replies.jsonl"
articles = "corpus/articles.jsonl"
papers = "corpus/papers.jsonl"

[allowlist]
domains = "allowlist/domains.txt"
keywords = "allowlist/keywords.txt"

[inputs]
embeddings = "embeddings.txt"
outlets = "outlets.tsv"
stance_postings = "stance/postings.jsonl"
stance_replies = "stance/replies.jsonl"
stance_labels = "stance/labels.tsv"
expert_labels = "expert_labels.tsv"
ratings = "out/ratings.jsonl"

[params]
seed = 7
merge_threshold = 0.9
damping = 0.85
lda_topics = 10
lda_iterations = 200
lexicon_k = 20
n_trees = 60

[output]
dir = "out"

[service]
port = 8080
""")


if __name__ == "__main__":
    main()
