#!/usr/bin/env python3
"""Writes the labeled résumé fixtures under fixtures/.

Per résumé: <stem>.blocks (block table), <stem>.sections (gold segments) and
<stem>.expected.json (entities as written, for extraction checks). Layouts
vary headline style, section names, section order and entry formats.
Deterministic; rerun after editing and commit the output.
"""

import json
import random
import sys
from pathlib import Path

REFERENCE = (2019, 3, 15)
MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
LONG_MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August",
               "September", "October", "November", "December"]

FIRST = ["Anna", "Jonas", "Priya", "Mateo", "Leila", "Kenji", "Sofia", "Daniel", "Aisha",
         "Lukas", "Hannah", "Noah", "Ingrid", "Samuel", "Yara", "Olivia", "Tomas", "Chen",
         "Fatima", "Marco", "Elena", "Omar", "Greta", "Ravi"]
LAST = ["Schmidt", "Garcia", "Nguyen", "Patel", "Okafor", "Tanaka", "Rossi", "Becker",
        "Haddad", "Kowalski", "Andersen", "Silva", "Novak", "Kim", "Larsen", "Moreau"]
LOCATIONS = ["Berlin, Germany", "Potsdam, Germany", "Munich, Germany", "Seattle, WA",
             "Boston, MA", "Toronto, Canada", "London, UK", "Austin, TX", "Dublin",
             "San Francisco, CA"]
UNIVERSITIES = ["Stanford University", "University of Potsdam", "ETH Zurich Institute of Technology",
                "Technical University of Munich", "University of Toronto", "Boston University",
                "Georgia Institute of Technology", "University of Washington",
                "Hasso Plattner Institute", "University of Cambridge"]
DEGREES = [("Bachelor of Science", "Bachelor"), ("B.Sc.", "Bachelor"),
           ("Bachelor of Arts", "Bachelor"), ("Master of Science", "Master"),
           ("M.Sc.", "Master"), ("MBA", "Master"), ("PhD", "Doctoral"),
           ("Doctor of Philosophy", "Doctoral")]
FIELDS = ["Computer Science", "Mathematics", "Physics", "Information Systems",
          "Electrical Engineering"]
EMPLOYERS = ["Google", "Zalando", "Siemens", "Spotify", "Shopify", "Atlassian", "Initech",
             "Globex Corporation", "Acme Inc", "Northwind Traders", "Blue Harbor Systems",
             "Contoso Ltd"]
TITLES = ["Software Engineer", "Data Scientist", "Backend Developer", "DevOps Engineer",
          "Product Manager", "Research Intern", "Frontend Developer", "Business Analyst",
          "Machine Learning Engineer", "Site Reliability Engineer"]
BULLETS = ["- Built internal services used by several teams",
           "- Reduced deployment time through automation",
           "- Mentored new colleagues and reviewed code",
           "- Designed data pipelines for reporting",
           "- Led migration of legacy systems"]
SKILLS = ["Python", "Java", "SQL", "Docker", "Kubernetes", "React", "TypeScript", "AWS",
          "Linux", "Git", "Pandas", "Spark", "Terraform", "C++", "Go", "Scrum", "Tableau",
          "Excel", "TensorFlow", "PostgreSQL", "Node.js", "Kotlin", "C#", ".NET"]

HEADLINES = {
    "Personal": (["Contact", "Personal Information"], ["About"]),
    "Education": (["Education", "Academic Background", "Studies"], ["Schooling", "Degrees"]),
    "WorkExperience": (["Work Experience", "Professional Experience", "Employment History",
                        "Experience"], ["Where I Have Worked", "Positions Held", "Industry Roles"]),
    "Skills": (["Skills", "Technical Skills", "Core Competencies"], ["Toolbox", "Tech Stack"]),
    "Other": (["Languages", "Interests", "Projects"], ["Beyond Work", "Extras"]),
}
OTHER_BODY = {
    "Languages": ["English (native), German (fluent)", "Spanish (basic)"],
    "Interests": ["Climbing, chess and photography"],
    "Projects": ["Open source contributor to a web framework",
                 "Maintainer of a small plotting library"],
}

STYLES = ["big_bold", "bold_only", "big_plain", "gap_keyword"]
BODY_FONT = 10.5
LINE_HEIGHT = 12.0
LINE_STEP = 14.0
ENTRY_GAP = 4.0
SECTION_GAP = 14.0


def months_between(start, end):
    return (end[0] - start[0]) * 12 + (end[1] - start[1]) + 1


def fmt_month(style, year, month):
    if style == "abbr":
        return f"{MONTHS[month - 1]} {year}"
    if style == "long":
        return f"{LONG_MONTHS[month - 1]} {year}"
    if style == "slash":
        return f"{month:02d}/{year}"
    if style == "comma":
        return f"{year},{month}"
    raise ValueError(style)


def last_day(year, month):
    if month == 2:
        leap = year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)
        return 29 if leap else 28
    return 30 if month in (4, 6, 9, 11) else 31


class Page:
    def __init__(self):
        self.blocks = []
        self.y = 60.0

    def add(self, text, size=BODY_FONT, bold=False, gap=0.0, x=72.0):
        self.y += gap
        height = LINE_HEIGHT if size <= 12 else size + 2
        width = max(10.0, round(len(text) * size * 0.5, 1))
        self.blocks.append((0, x, round(self.y, 1), width, height, size, 1 if bold else 0,
                            "Helvetica-Bold" if bold else "Helvetica", text))
        index = len(self.blocks) - 1
        self.y += height + (LINE_STEP - LINE_HEIGHT)
        return index


def headline(page, text, style):
    if style == "big_bold":
        return page.add(text.upper(), size=14, bold=True, gap=SECTION_GAP)
    if style == "bold_only":
        return page.add(text, size=11, bold=True, gap=SECTION_GAP)
    if style == "big_plain":
        return page.add(text, size=13, gap=SECTION_GAP)
    return page.add(text, gap=SECTION_GAP)


def make_resume(index, rng):
    style = STYLES[index % len(STYLES)]
    date_style = ["abbr", "slash", "long", "comma"][(index // 4) % 4]
    first, last = FIRST[index % len(FIRST)], LAST[(index * 7) % len(LAST)]
    name = f"{first} {last}"
    email = f"{first.lower()}.{last.lower()}@example.com"
    phone = f"+49 30 {rng.randint(1000, 9999)} {rng.randint(100, 999)}"
    location = LOCATIONS[index % len(LOCATIONS)]
    expected = {"name": name, "email": email, "phone": phone, "location": location,
                "educations": [], "works": [], "skills": []}

    page = Page()
    segments = []

    def open_segment(label, head):
        segments.append({"label": label, "headline": head, "first": len(page.blocks) if head is None else head})

    # Personal block: name, contact, location.
    name_idx = page.add(name, size=20, bold=(style != "big_plain"))
    open_segment("Personal", name_idx)
    page.add(f"{email} | {phone}")
    page.add(location)
    if index % 5 == 3 and style != "gap_keyword":
        head_text = rng.choice(HEADLINES["Personal"][0])
        open_segment("Personal", headline(page, head_text, style))
        page.add("Engineer who enjoys building reliable software for real users")

    def pick_headline(label):
        keyword, free = HEADLINES[label]
        if style != "gap_keyword" and rng.random() < 0.4:
            return rng.choice(free)
        return rng.choice(keyword)

    # Career timeline, most recent first.
    n_jobs = rng.randint(1, 3)
    if index == 0:
        n_jobs = 3  # one fixture with a full three-step career
    jobs = []
    end = None  # open-ended for the most recent job
    cursor = (REFERENCE[0], REFERENCE[1])
    for j in range(n_jobs):
        if j == 0 and rng.random() < 0.6:
            job_end = None
            start_year = cursor[0] - rng.randint(1, 3)
        else:
            ey = cursor[0] - rng.randint(0, 1)
            job_end = (ey, rng.randint(1, 12))
            if job_end > cursor:
                job_end = cursor
            start_year = job_end[0] - rng.randint(1, 3)
        start = (start_year, rng.randint(1, 12))
        if job_end is not None and start >= job_end:
            start = (job_end[0] - 1, job_end[1])
        jobs.append((start, job_end))
        cursor = (start[0] - 1, 12) if start[1] == 1 else (start[0], start[1] - 1)
        cursor = (cursor[0] - rng.randint(0, 1), cursor[1])
    grad_year = jobs[-1][0][0]

    employers = rng.sample(EMPLOYERS, n_jobs)
    titles = rng.sample(TITLES, n_jobs)

    def emit_work(label_head):
        open_segment("WorkExperience", headline(page, label_head, style))
        fmt_kind = rng.choice(["three_line", "pipe", "title_at"])
        for (start, job_end), employer, title in zip(jobs, employers, titles):
            s = fmt_month(date_style, *start)
            e = "Present" if job_end is None else fmt_month(date_style, *job_end)
            dates = f"{s} - {e}"
            gap = ENTRY_GAP if page.blocks[-1][8] != label_head and len(expected["works"]) else 0.0
            if fmt_kind == "three_line":
                page.add(employer, gap=gap)
                page.add(title)
                page.add(dates)
            elif fmt_kind == "pipe":
                page.add(f"{title} | {employer} | {dates}", gap=gap)
            else:
                page.add(f"{title} at {employer}", gap=gap)
                page.add(dates)
            for b in rng.sample(BULLETS, rng.randint(0, 2)):
                page.add(b)
            resolved = job_end or (REFERENCE[0], REFERENCE[1])
            expected["works"].append({
                "employer": employer, "title": title,
                "start": f"{start[0]:04d}-{start[1]:02d}-01",
                "end": None if job_end is None else
                f"{job_end[0]:04d}-{job_end[1]:02d}-{last_day(*job_end):02d}",
                "months": months_between(start, resolved)})

    def emit_education(label_head):
        open_segment("Education", headline(page, label_head, style))
        n_edu = rng.randint(1, 2)
        unis = rng.sample(UNIVERSITIES, n_edu)
        end_year = grad_year
        fmt_kind = rng.choice(["three_line", "one_line"])
        levels = sorted(rng.sample(DEGREES, n_edu), key=lambda d: ["Bachelor", "Master", "Doctoral"].index(d[1]), reverse=True)
        for k, (uni, (degree, level)) in enumerate(zip(unis, levels)):
            length = 2 if level == "Master" else 3 if level == "Bachelor" else 4
            start = (end_year - length, 9)
            finish = (end_year, 6)
            s, e = fmt_month(date_style, *start), fmt_month(date_style, *finish)
            field = rng.choice(FIELDS)
            degree_text = f"{degree} in {field}"
            gap = ENTRY_GAP if k else 0.0
            if fmt_kind == "three_line":
                page.add(uni, gap=gap)
                page.add(degree_text)
                page.add(f"{s} - {e}")
            else:
                page.add(f"{degree_text} | {uni} | {s} - {e}", gap=gap)
            expected["educations"].append({
                "institution": uni, "degree": level, "degree_text": degree_text,
                "field": field,
                "start": f"{start[0]:04d}-{start[1]:02d}-01",
                "end": f"{finish[0]:04d}-{finish[1]:02d}-{last_day(*finish):02d}"})
            end_year = start[0]

    def emit_skills(label_head):
        open_segment("Skills", headline(page, label_head, style))
        chosen = rng.sample(SKILLS, rng.randint(5, 10))
        if rng.random() < 0.5:
            page.add(", ".join(chosen[: len(chosen) // 2]))
            page.add(", ".join(chosen[len(chosen) // 2:]))
        else:
            page.add("Languages: " + ", ".join(chosen[:3]) if style != "gap_keyword"
                     else "Programming: " + ", ".join(chosen[:3]))
            page.add("Tools: " + " | ".join(chosen[3:]))
        expected["skills"] = [c.lower() for c in chosen]

    def emit_other(label_head):
        open_segment("Other", headline(page, label_head, style))
        key = label_head if label_head in OTHER_BODY else rng.choice(sorted(OTHER_BODY))
        for line in OTHER_BODY[key]:
            page.add(line)

    order = ["Education", "WorkExperience", "Skills"]
    if index % 2 == 1:
        order = ["WorkExperience", "Education", "Skills"]
    if index % 6 == 4:
        order = ["Skills", "WorkExperience", "Education"]
    if index % 3 == 0:
        order.insert(rng.randint(1, 3), "Other")
    emitters = {"Education": emit_education, "WorkExperience": emit_work, "Skills": emit_skills,
                "Other": emit_other}
    for label in order:
        emitters[label](pick_headline(label))
    # Education entries are listed latest first already; works too.

    # Close the gold segments.
    gold = []
    for k, seg in enumerate(segments):
        last_block = (segments[k + 1]["first"] - 1) if k + 1 < len(segments) else len(page.blocks) - 1
        gold.append((seg["label"], seg["headline"], seg["first"], last_block))
    return page.blocks, gold, expected


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    for index in range(24):
        rng = random.Random(1000 + index)
        blocks, gold, expected = make_resume(index, rng)
        stem = f"resume_{index + 1:02d}"
        with open(out / f"{stem}.blocks", "w", encoding="utf-8") as f:
            f.write("# page\tx\ty\twidth\theight\tfont_size\tbold\tfont_name\ttext\n")
            for b in blocks:
                f.write("\t".join(str(v) for v in b) + "\n")
        with open(out / f"{stem}.sections", "w", encoding="utf-8") as f:
            for label, head, first, last in gold:
                f.write(f"{label}\t{'-' if head is None else head}\t{first}-{last}\n")
        with open(out / f"{stem}.expected.json", "w", encoding="utf-8") as f:
            json.dump(expected, f, indent=2, ensure_ascii=False)
            f.write("\n")


if __name__ == "__main__":
    main()
