#!/usr/bin/env python3
"""Generates the bundled English-Esperanto mini-corpus under data/mini/.

Sentences are built from templates over a small bilingual lexicon with
Esperanto agreement (plural -j, accusative -n). Output is deterministic.
"""
import argparse
import pathlib
import random

NOUNS = [
    ("dog", "dogs", "hundo"), ("cat", "cats", "kato"), ("book", "books", "libro"),
    ("house", "houses", "domo"), ("tree", "trees", "arbo"), ("friend", "friends", "amiko"),
    ("teacher", "teachers", "instruisto"), ("child", "children", "infano"),
    ("bird", "birds", "birdo"), ("city", "cities", "urbo"), ("letter", "letters", "letero"),
    ("flower", "flowers", "floro"), ("apple", "apples", "pomo"), ("river", "rivers", "rivero"),
    ("car", "cars", "aŭto"), ("table", "tables", "tablo"), ("window", "windows", "fenestro"),
    ("door", "doors", "pordo"), ("horse", "horses", "ĉevalo"), ("ship", "ships", "ŝipo"),
    ("school", "schools", "lernejo"), ("garden", "gardens", "ĝardeno"),
    ("mountain", "mountains", "monto"), ("song", "songs", "kanto"), ("fish", "fish", "fiŝo"),
    ("key", "keys", "ŝlosilo"), ("chair", "chairs", "seĝo"), ("word", "words", "vorto"),
    ("star", "stars", "stelo"), ("hat", "hats", "ĉapelo"), ("king", "kings", "reĝo"),
    ("queen", "queens", "reĝino"), ("doctor", "doctors", "kuracisto"),
    ("brother", "brothers", "frato"), ("sister", "sisters", "fratino"),
    ("student", "students", "studento"), ("language", "languages", "lingvo"),
    ("newspaper", "newspapers", "ĵurnalo"), ("hatter", "hatters", "ĉapelisto"),
    ("village", "villages", "vilaĝo"), ("dream", "dreams", "revo"),
]
ADJECTIVES = [
    ("big", "granda"), ("small", "malgranda"), ("beautiful", "bela"), ("old", "malnova"),
    ("new", "nova"), ("red", "ruĝa"), ("green", "verda"), ("happy", "feliĉa"),
    ("sad", "malĝoja"), ("good", "bona"), ("bad", "malbona"), ("white", "blanka"),
    ("black", "nigra"), ("fast", "rapida"), ("slow", "malrapida"), ("young", "juna"),
    ("warm", "varma"), ("cold", "malvarma"), ("strange", "stranga"), ("important", "grava"),
]
VERBS = [  # past, 3sg present, base, Esperanto root
    ("saw", "sees", "see", "vid"), ("found", "finds", "find", "trov"),
    ("loved", "loves", "love", "am"), ("bought", "buys", "buy", "aĉet"),
    ("read", "reads", "read", "leg"), ("wrote", "writes", "write", "skrib"),
    ("brought", "brings", "bring", "alport"), ("heard", "hears", "hear", "aŭd"),
    ("took", "takes", "take", "pren"), ("opened", "opens", "open", "malferm"),
    ("closed", "closes", "close", "ferm"), ("built", "builds", "build", "konstru"),
    ("sold", "sells", "sell", "vend"), ("painted", "paints", "paint", "pentr"),
    ("watched", "watches", "watch", "rigard"), ("helped", "helps", "help", "help"),
    ("visited", "visits", "visit", "vizit"), ("remembered", "remembers", "remember", "memor"),
]
SUBJECTS = [  # English, 3rd-person singular?, Esperanto
    ("I", False, "mi"), ("you", False, "vi"), ("he", True, "li"), ("she", True, "ŝi"),
    ("we", False, "ni"), ("they", False, "ili"),
]
NAMES = [("Mary", "Maria"), ("Peter", "Petro"), ("John", "Johano"), ("Anna", "Anna"),
         ("Alice", "Alico"), ("Paul", "Paŭlo")]
NUMBERS = [("two", "du"), ("three", "tri"), ("four", "kvar"), ("five", "kvin"),
           ("ten", "dek")]
TIMES = [("today", "hodiaŭ"), ("tomorrow", "morgaŭ"), ("yesterday", "hieraŭ"),
         ("every day", "ĉiutage")]


def cap(text):
    return text[0].upper() + text[1:]


def np_eo(noun, adj=None, plural=False, acc=False):
    suffix = ("j" if plural else "") + ("n" if acc else "")
    words = ["la"]
    if adj:
        words.append(adj + suffix)
    words.append(noun + suffix)
    return " ".join(words)


def np_en(noun, adj=None, plural=False):
    word = noun[1] if plural else noun[0]
    return "the " + (adj + " " if adj else "") + word


def sentence(rng):
    kind = rng.randrange(10)
    noun, noun2 = rng.choice(NOUNS), rng.choice(NOUNS)
    adj_en, adj_eo = rng.choice(ADJECTIVES)
    verb = rng.choice(VERBS)
    subj = rng.choice(SUBJECTS)
    name = rng.choice(NAMES)
    if kind == 0:
        plural = rng.random() < 0.3
        en = f"{cap(np_en(noun, adj_en, plural))} {verb[0]} {np_en(noun2)}."
        eo = f"{cap(np_eo(noun[2], adj_eo, plural))} {verb[3]}is {np_eo(noun2[2], acc=True)}."
    elif kind == 1:
        en = f"{name[0]} is {adj_en}."
        eo = f"{name[1]} estas {adj_eo}."
    elif kind == 2:
        num_en, num_eo = rng.choice(NUMBERS)
        verb_en = verb[1] if subj[1] else verb[2]
        en = f"{cap(subj[0])} {verb_en} {num_en} {noun[1]}."
        eo = f"{cap(subj[2])} {verb[3]}as {num_eo} {noun[2]}jn."
    elif kind == 3:
        en = f"Where is {np_en(noun, adj_en)}?"
        eo = f"Kie estas {np_eo(noun[2], adj_eo)}?"
    elif kind == 4:
        time_en, time_eo = rng.choice(TIMES[:2])
        en = f"{cap(subj[0])} will visit {np_en(noun2)} {time_en}."
        eo = f"{cap(subj[2])} vizitos {np_eo(noun2[2], acc=True)} {time_eo}."
    elif kind == 5:
        en = f"Do you like {noun[1]}?"
        eo = f"Ĉu vi ŝatas {noun[2]}jn?"
    elif kind == 6:
        en = f"{name[0]} said that {np_en(noun)} was {adj_en}."
        eo = f"{name[1]} diris, ke {np_eo(noun[2])} estis {adj_eo}."
    elif kind == 7:
        en = f"{cap(subj[0])} didn't want to {verb[2]} {np_en(noun, adj_en)}!"
        eo = f"{cap(subj[2])} ne volis {verb[3]}i {np_eo(noun[2], adj_eo, acc=True)}!"
    elif kind == 8:
        en = f"\"{cap(np_en(noun))} is {adj_en},\" said {name[0]}."
        eo = f"\"{cap(np_eo(noun[2]))} estas {adj_eo},\" diris {name[1]}."
    else:
        time_en, time_eo = rng.choice([TIMES[0], TIMES[2]])
        en = f"{name[0]} and {subj[0]} {verb[0]} {np_en(noun, adj_en)} {time_en}."
        eo = f"{name[1]} kaj {subj[2]} {verb[3]}is {np_eo(noun[2], adj_eo, acc=True)} {time_eo}."
    return en, eo


def generate(rng, count, seen):
    pairs = []
    while len(pairs) < count:
        pair = sentence(rng)
        if pair in seen:
            continue
        seen.add(pair)
        pairs.append(pair)
    return pairs


def write(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default=pathlib.Path(__file__).resolve().parent.parent / "data" / "mini",
                        type=pathlib.Path)
    parser.add_argument("--size", type=int, default=1000)
    parser.add_argument("--test-size", type=int, default=100)
    parser.add_argument("--seed", type=int, default=20200601)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    seen = set()
    train = generate(rng, args.size, seen)
    test = generate(rng, args.test_size, seen)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write(args.out_dir / "corpus.en", [en for en, _ in train])
    write(args.out_dir / "corpus.eo", [eo for _, eo in train])
    write(args.out_dir / "test.en", [en for en, _ in test])
    write(args.out_dir / "test.eo", [eo for _, eo in test])


if __name__ == "__main__":
    main()
