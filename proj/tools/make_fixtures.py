#!/usr/bin/env python3
"""Regenerates the synthetic fixture corpus under tests/fixtures.

Output is a pure function of the seed below; rerunning rewrites identical
files.
"""

import csv
import io
import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
SEED = 20180

rng = random.Random(SEED)


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    path.write_text(buf.getvalue(), encoding="utf-8")


def jitter(center, spread):
    return round(center + rng.uniform(-spread, spread), 6)


def day(year_lo=2015, year_hi=2018):
    return rng.randint(year_lo, year_hi), rng.randint(1, 12), rng.randint(1, 28)


STREETS = ["MAIN ST", "ELM ST", "OAK AVE", "PARK RD", "1ST AVE", "LAKE SHORE DR", "MARKET ST", "BROAD ST"]


def boston():
    header = ["INCIDENT_NUMBER", "OFFENSE_CODE_GROUP", "OFFENSE_DESCRIPTION", "OCCURRED_ON_DATE", "STREET", "Lat",
              "Long"]
    groups = [("Larceny", "LARCENY THEFT FROM BUILDING"), ("Motor Vehicle Accident Response", "M/V ACCIDENT - OTHER"),
              ("Simple Assault", "ASSAULT SIMPLE - BATTERY"), ("Vandalism", "VANDALISM"),
              ("Drug Violation", "DRUGS - POSS CLASS B"), ("Residential Burglary", "BURGLARY - RESIDENTIAL")]
    rows = []
    for i in range(24):
        g, d = groups[i % len(groups)]
        y, m, dd = day()
        lat, lon = jitter(42.33, 0.05), jitter(-71.08, 0.05)
        if i in (5, 17):
            lat, lon = -1.0, -1.0  # the source's placeholder coordinates
        if i == 11:
            lat, lon = "", ""
        rows.append([f"I18{i:06d}", g, d, f"{y}-{m:02d}-{dd:02d} {rng.randint(0, 23):02d}:00:00",
                     rng.choice(STREETS), lat, lon])
    return header, rows


def chicago():
    header = ["ID", "Date", "Block", "Primary Type", "Description", "Location Description", "Latitude", "Longitude"]
    types = [("THEFT", "$500 AND UNDER"), ("BATTERY", "DOMESTIC BATTERY SIMPLE"), ("NARCOTICS", "POSS: CANNABIS"),
             ("CRIMINAL DAMAGE", "TO VEHICLE"), ("MOTOR VEHICLE THEFT", "AUTOMOBILE"), ("ROBBERY", "ARMED: HANDGUN"),
             ("WEAPONS VIOLATION", "UNLAWFUL POSS OF HANDGUN"), ("DECEPTIVE PRACTICE", "FINANCIAL IDENTITY THEFT")]
    rows = []
    for i in range(24):
        t, d = types[i % len(types)]
        y, m, dd = day()
        lat, lon = jitter(41.85, 0.08), jitter(-87.68, 0.08)
        if i == 9:
            lat = "not-a-number"
        rows.append([str(10000 + i), f"{m:02d}/{dd:02d}/{y} 10:15:00 PM", f"0{i}XX W {rng.choice(STREETS)}", t, d,
                     rng.choice(["STREET", "RESIDENCE", "APARTMENT", "SIDEWALK"]), lat, lon])
    return header, rows


def denver():
    header = ["INCIDENT_ID", "OFFENSE_TYPE_ID", "OFFENSE_CATEGORY_ID", "FIRST_OCCURRENCE_DATE", "INCIDENT_ADDRESS",
              "GEO_LAT", "GEO_LON"]
    types = [("theft-of-motor-vehicle", "auto-theft"), ("theft-items-from-vehicle", "theft-from-motor-vehicle"),
             ("traf-vehicular-assault", "traffic-accident"), ("criminal-mischief-other", "public-disorder"),
             ("drug-methampetamine-possess", "drug-alcohol"), ("assault-simple", "other-crimes-against-persons")]
    rows = []
    for i in range(22):
        t, c = types[i % len(types)]
        y, m, dd = day()
        date = f"{m}/{dd}/{y} 1:30:00 AM"
        if i == 13:
            date = "13/45/2017"
        rows.append([str(20000 + i), t, c, date, f"{rng.randint(100, 9999)} {rng.choice(STREETS)}",
                     jitter(39.74, 0.06), jitter(-104.99, 0.06)])
    return header, rows


def philly():
    header = ["objectid", "dispatch_date", "text_general_code", "location_block", "lat", "lng"]
    types = ["Thefts", "Other Assaults", "Vandalism/Criminal Mischief", "Fraud", "Narcotic / Drug Law Violations",
             "Burglary Residential", "Aggravated Assault Firearm"]
    rows = []
    for i in range(22):
        y, m, dd = day()
        row = [str(30000 + i), f"{y}-{m:02d}-{dd:02d}", types[i % len(types)],
               f"{rng.randint(100, 5000)} BLOCK {rng.choice(STREETS)}", jitter(39.95, 0.05), jitter(-75.16, 0.05)]
        if i == 7:
            row = row[:4]  # truncated line
        rows.append(row)
    return header, rows


def san_francisco():
    header = ["IncidntNum", "Category", "Descript", "Date", "Address", "X", "Y"]
    types = [("LARCENY/THEFT", "GRAND THEFT FROM LOCKED AUTO"), ("VEHICLE THEFT", "STOLEN AUTOMOBILE"),
             ("ASSAULT", "BATTERY"), ("NON-CRIMINAL", "LOST PROPERTY"), ("WARRANTS", "WARRANT ARREST"),
             ("VANDALISM", "MALICIOUS MISCHIEF, VANDALISM"), ("PROSTITUTION", "SOLICITS FOR ACT OF PROSTITUTION")]
    rows = []
    for i in range(22):
        c, d = types[i % len(types)]
        y, m, dd = day()
        x, yy = jitter(-122.42, 0.04), jitter(37.77, 0.04)
        if i == 19:
            x, yy = -120.5, 90.0  # the source's out-of-range placeholder
        rows.append([str(40000 + i), c, d, f"{m:02d}/{dd:02d}/{y}", f"{rng.randint(1, 999)} {rng.choice(STREETS)}",
                     x, yy])
    return header, rows


CITIES = [("Houston", "TX"), ("Phoenix", "AZ"), ("Dallas", "TX"), ("Atlanta", "GA"), ("Seattle", "WA"),
          ("Miami", "FL"), ("Denver", "CO"), ("Chicago", "IL")]


def fatal_police_shootings():
    header = ["id", "name", "date", "manner_of_death", "armed", "age", "gender", "race", "city", "state",
              "signs_of_mental_illness", "threat_level", "flee", "body_camera"]
    rows = []
    for i in range(20):
        y, m, dd = day()
        city, state = rng.choice(CITIES)
        age = str(rng.randint(16, 70))
        if i == 4:
            age = ""
        if i == 15:
            age = "240"
        rows.append([str(50000 + i), f"Person {i}", f"{y}-{m:02d}-{dd:02d}",
                     rng.choice(["shot", "shot and Tasered"]), rng.choice(["gun", "knife", "unarmed", "vehicle"]),
                     age, rng.choice(["M", "F"]), rng.choice(["W", "B", "H", "A"]), city, state,
                     rng.choice(["True", "False"]), rng.choice(["attack", "other"]),
                     rng.choice(["Not fleeing", "Car", "Foot"]), rng.choice(["True", "False"])])
    return header, rows


MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
          "November", "December"]


def homicide_reports():
    header = ["Record ID", "Agency Code", "Agency Name", "City", "State", "Year", "Month", "Crime Type",
              "Crime Solved", "Victim Sex", "Victim Age", "Victim Race", "Perpetrator Sex", "Perpetrator Age",
              "Perpetrator Race", "Relationship", "Weapon", "Victim Count", "Record Source"]
    rows = []
    for i in range(22):
        city, state = rng.choice(CITIES)
        vage = str(rng.randint(1, 90))
        if i in (3, 12):
            vage = "998"
        if i == 18:
            vage = "-5"
        rows.append([str(60000 + i), f"AG{i:04d}", f"{city} Police", city, state, str(rng.randint(1980, 2014)),
                     rng.choice(MONTHS), rng.choice(["Murder or Manslaughter", "Manslaughter by Negligence"]),
                     rng.choice(["Yes", "No"]), rng.choice(["Male", "Female"]), vage,
                     rng.choice(["White", "Black", "Unknown"]), rng.choice(["Male", "Female", "Unknown"]),
                     str(rng.randint(15, 60)), rng.choice(["White", "Black", "Unknown"]),
                     rng.choice(["Acquaintance", "Stranger", "Wife", "Unknown"]),
                     rng.choice(["Handgun", "Knife", "Blunt Object", "Unknown"]), str(rng.randint(0, 3)), "FBI"])
    return header, rows


def global_terrorism():
    header = ["eventid", "iyear", "imonth", "iday", "country_txt", "region_txt", "provstate", "city", "latitude",
              "longitude", "attacktype1_txt", "targtype1_txt", "gname", "motive", "weaptype1_txt", "nkill",
              "propextent_txt", "summary"]
    us = [("New York", "New York", 40.71, -74.0), ("California", "Los Angeles", 34.05, -118.24),
          ("Texas", "Austin", 30.27, -97.74), ("Oregon", "Portland", 45.52, -122.68)]
    rows = []
    for i in range(24):
        y, m, dd = day(1995, 2017)
        if i == 6:
            dd = 0
        if i % 5 == 4:
            country, prov, city, lat, lon = "France", "Ile-de-France", "Paris", 48.85, 2.35
        else:
            country = "United States"
            prov, city, lat, lon = rng.choice(us)
        rows.append([f"2000{i:06d}", str(y), str(m), str(dd), country, "North America", prov, city,
                     jitter(lat, 0.02), jitter(lon, 0.02),
                     rng.choice(["Bombing/Explosion", "Armed Assault", "Facility/Infrastructure Attack",
                                 "Hostage Taking (Kidnapping)"]),
                     rng.choice(["Business", "Private Citizens & Property", "Government (General)"]),
                     rng.choice(["Unknown", "Anti-Government extremists", "Earth Liberation Front (ELF)"]),
                     rng.choice(["Unknown", "Protest against the government", ""]),
                     rng.choice(["Explosives", "Firearms", "Incendiary"]), str(rng.randint(0, 4)),
                     rng.choice(["Minor (likely < $1 million)", "Unknown"]),
                     f"{MONTHS[m - 1]} {max(dd, 1)}, {y}: an attack was reported in {city}."])
    return header, rows


def mass_shootings():
    header = ["S#", "Title", "Location", "Date", "Summary", "Fatalities", "Injured", "Total victims",
              "Mental Health Issues", "Race", "Gender", "Latitude", "Longitude"]
    places = [("Orlando, Florida", 28.54, -81.38), ("Las Vegas, NV", 36.17, -115.14),
              ("Sutherland Springs, Texas", 29.27, -98.06), ("Aurora, Colorado", 39.73, -104.83)]
    rows = []
    for i in range(20):
        y, m, dd = day(2000, 2017)
        loc, lat, lon = rng.choice(places)
        f, inj = rng.randint(3, 12), rng.randint(0, 20)
        total = str(f + inj)
        if i == 10:
            total = "many"
        rows.append([str(i + 1), f"Shooting {i + 1}", loc, f"{m}/{dd}/{y}",
                     "A gunman opened fire before being stopped by police.", str(f), str(inj), total,
                     rng.choice(["Yes", "No", "Unknown"]), rng.choice(["White", "Black", "Asian", "Unknown"]),
                     rng.choice(["Male", "Female"]), jitter(lat, 0.01), jitter(lon, 0.01)])
    return header, rows


# ---- articles --------------------------------------------------------------

CRIME_TOPICS = {
    "shooting": [
        "{title_person} said the suspect fired a gun at officers before the shooting ended.",
        "Police arrested a man after a fatal shooting on Monday. The suspect was charged with murder and assault.",
        "Witnesses described the gunman and the victim to detectives from the {org}.",
        "The homicide investigation continues in {gpe}, where another shooting left two people wounded.",
    ],
    "fraud": [
        "Prosecutors said the scheme involved fraud, forgery and embezzlement at a bank in {gpe}.",
        "The accountant was indicted on fraud charges and accused of bribery of officials.",
        "{title_person} described the counterfeit checks and the stolen identity documents.",
        "The {org} opened a fraud investigation into the embezzlement of pension funds.",
    ],
    "drugs": [
        "Officers seized cocaine, heroin and marijuana during a narcotics raid in {gpe}.",
        "The drug trafficking ring moved methamphetamine and opioid pills across state lines.",
        "{title_person} said the narcotics task force made twelve arrests on Friday.",
        "Agents from the {org} tracked the drug shipments and the stolen cash.",
    ],
    "terror": [
        "Investigators said the bomb exploded near a crowded market in {gpe}.",
        "The terror suspect was linked to {org} and charged with planning an explosion.",
        "{title_person} called the bombing an act of terrorism and promised justice.",
        "Security forces killed two attackers after a hostage standoff that followed the explosion.",
    ],
}

NON_CRIME = [
    "The new iPhone sold out in stores across {gpe} as fans lined up for the launch.",
    "President Trump met with governors in {gpe} to discuss infrastructure spending and the budget.",
    "The team won the championship after a dramatic overtime goal on Sunday night.",
    "Researchers at the university published a study about coffee and sleep quality.",
    "The museum opened a new exhibit on modern art and photography in {gpe}.",
]

# Hits only the first exclusion group: vehicle + accident + damage.
EXCLUDED = [
    "A vehicle accident on the highway caused damage to the guard rail, officials said.",
    "The vehicle accident near the bridge left minor damage and no injuries.",
    "Heavy rain led to a vehicle accident and some damage to a storefront.",
]

PEOPLE = ["Officer John Smith", "Senator Maria Lopez", "Detective Paul Grant", "Mayor Ann Lee", "Chief Tom Ruiz"]
GPES = ["Chicago", "Boston", "Texas", "New York", "Florida", "Denver", "Philadelphia"]
ORGS = ["FBI", "Chicago Police Department", "Justice Department", "Islamic State", "Boston Police Department"]


def fill(template):
    return template.format(title_person=rng.choice(PEOPLE), gpe=rng.choice(GPES), org=rng.choice(ORGS))


def article_text(kind):
    if kind in CRIME_TOPICS:
        sentences = rng.sample(CRIME_TOPICS[kind], 3)
        return " ".join(fill(s) for s in sentences)
    if kind == "excluded":
        return rng.choice(EXCLUDED)
    return " ".join(fill(s) for s in rng.sample(NON_CRIME, 2))


TITLES = {
    "shooting": ["Police investigate deadly shooting", "Gunman kills two in downtown shooting"],
    "fraud": ["Bank executive charged in fraud case", "Fraud scheme targeted retirees"],
    "drugs": ["Narcotics raid nets large seizure", "Drug ring broken up"],
    "terror": ["Bomb blast investigated as terrorism", "Terror plot foiled"],
    "other": ["New phone launch draws crowds", "Governors meet on budget", "Museum opens exhibit"],
    "excluded": ["Highway crash slows traffic", "Storm causes road trouble"],
}


def kinds(n):
    order = ["shooting", "fraud", "drugs", "terror", "other", "excluded", "shooting", "fraud", "drugs", "terror"]
    return [order[i % len(order)] for i in range(n)]


def kaggle_news():
    header = ["", "id", "title", "publication", "author", "date", "year", "month", "url", "content"]
    pubs = ["Breitbart", "CNN", "New York Times", "Atlantic", "Fox News"]
    rows = []
    for i, kind in enumerate(kinds(32)):
        y, m, dd = day(2016, 2017)
        date = f"{y}-{m:02d}-{dd:02d}"
        if i == 21:
            date = "sometime in 2016"
        rows.append([str(i), str(17000 + i), rng.choice(TITLES["other" if kind == "other" else kind]),
                     rng.choice(pubs), rng.choice(["Staff", "Jane Roe", ""]), date, str(y), str(m),
                     "", article_text(kind)])
    return header, rows


def eager_news():
    header = ["id", "newline_id", "news_outlet_id", "outlet_name", "title", "author", "publish_time", "content",
              "article_url"]
    outlets = [("7", "Reuters"), ("12", "Associated Press"), ("31", "Chicago Tribune"), ("44", "Denver Post")]
    rows = []
    for i, kind in enumerate(kinds(28)):
        y, m, dd = day(2016, 2017)
        oid, oname = rng.choice(outlets)
        ident = str(90000 + i)
        if i == 17:
            ident = ""
        rows.append([ident, str(500 + i), oid, oname, rng.choice(TITLES["other" if kind == "other" else kind]),
                     rng.choice(["Wire staff", ""]),
                     f"{y}-{m:02d}-{dd:02d} {rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:00",
                     article_text(kind), f"https://news.example/{i}"])
    return header, rows


def main():
    crime = ROOT / "crime"
    write_csv(crime / "boston.csv", *boston())
    write_csv(crime / "chicago.csv", *chicago())
    write_csv(crime / "denver.csv", *denver())
    write_csv(crime / "philly.csv", *philly())
    write_csv(crime / "san_francisco.csv", *san_francisco())
    write_csv(crime / "fatal_police_shootings.csv", *fatal_police_shootings())
    write_csv(crime / "homicide_reports.csv", *homicide_reports())
    write_csv(crime / "global_terrorism.csv", *global_terrorism())
    write_csv(crime / "mass_shootings.csv", *mass_shootings())
    news = ROOT / "news"
    write_csv(news / "kaggle_articles.csv", *kaggle_news())
    write_csv(news / "eager_articles.csv", *eager_news())

    config = {
        "crime_inputs": sorted(f"crime/{p.name}" for p in crime.glob("*.csv")),
        "article_inputs": ["news/kaggle_articles.csv", "news/eager_articles.csv"],
        "threshold": 3,
        "min_df": 5,
        "max_df_ratio": 0.95,
        "max_features": 60,
        "sweep": "2..8",
        "k": 4,
        "top_terms": 8,
        "eps": 1.0,
        "min_samples": 4,
        "lda_topics": 4,
        "lda_iterations": 200,
        "top_words": 8,
        "word_frequencies": 30,
        "seed": 42,
        "output_dir": "../../build/fixture_run",
    }
    (ROOT / "pipeline.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
