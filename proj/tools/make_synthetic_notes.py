#!/usr/bin/env python3
# Copyright 2026 The DischargeKit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic discharge-note corpus used by the tests.

Notes follow the de-identified discharge summary layout: fixed-width
wrapping with a trailing space on wrapped lines, "___" placeholders and one
header per section. Nothing here comes from real patients.

    python3 tools/make_synthetic_notes.py tests/fixtures
"""

import argparse
import csv
import json
import pathlib
import random
import textwrap

SERVICES = ["MEDICINE", "SURGERY", "CARDIOTHORACIC", "NEUROLOGY", "ORTHOPAEDICS"]
COMPLAINTS = [
    "Abdominal pain",
    "Chest pain",
    "Shortness of breath",
    "Fever and chills",
    "Right hip pain after fall",
    "Headache",
]
ALLERGIES = ["No Known Allergies / Adverse Drug Reactions", "Penicillins",
             "Codeine / Levaquin", "Sulfa (Sulfonamide Antibiotics)"]
PROCEDURES = ["None", "Laparoscopic appendectomy", "Cardiac catheterization",
              "Right hip hemiarthroplasty"]
HPI_SENTENCES = [
    "Mr. ___ is a ___ year old man with a history of hypertension who presents with {cc}.",
    "Ms. ___ is a ___ year old woman with a history of diabetes who presents with {cc}.",
    "Symptoms began three days prior to admission and have been worsening.",
    "He denies nausea, vomiting or diarrhea.",
    "She reports poor oral intake over the last week.",
    "In the ED, initial vitals were stable and labs were notable for a mild leukocytosis.",
    "Imaging in the ED was concerning for an acute process.",
]
PMH = ["Hypertension", "Hyperlipidemia", "Type 2 diabetes mellitus", "GERD",
       "Atrial fibrillation", "Chronic kidney disease stage III", "Gout"]
MEDS = [
    "Lisinopril 10 mg PO DAILY",
    "Atorvastatin 40 mg PO QPM",
    "MetFORMIN (Glucophage) 500 mg PO BID",
    "Omeprazole 20 mg PO DAILY",
    "Aspirin 81 mg PO DAILY",
    "Acetaminophen 1000 mg PO Q8H:PRN pain",
]
LABS = [
    "BLOOD WBC-{a}.{b} RBC-4.{b} Hgb-1{b}.{a} Hct-3{a}.{b} MCV-9{a} Plt ___",
    "BLOOD Glucose-{a}{b}{a} UreaN-1{b} Creat-0.{a} Na-13{b} K-4.{a} Cl-10{b}",
    "BLOOD ALT-2{a} AST-3{b} AlkPhos-7{a} TotBili-0.{b}",
    "URINE Color-Yellow Appear-Clear Sp ___",
]
HOSPITAL_COURSE = [
    "The patient was admitted to the floor for further management.",
    "He was started on IV antibiotics with improvement in his symptoms.",
    "She was seen by physical therapy who recommended discharge home.",
    "Pain was controlled with oral medications.",
    "Home medications were continued during the admission.",
    "The patient remained hemodynamically stable throughout the stay.",
    "Diet was advanced as tolerated without nausea or vomiting.",
]
INSTRUCTIONS = [
    "You were admitted to the hospital with {cc_lower}.",
    "You were treated with antibiotics and your symptoms improved.",
    "Please continue to take your medications as prescribed.",
    "Please follow up with your primary care physician within one week.",
    "Return to the Emergency Department if you develop fevers or worsening pain.",
    "It was a pleasure taking care of you.",
]
DIAGNOSES = ["Perforated appendicitis", "Community acquired pneumonia",
             "Non-ST elevation myocardial infarction", "Right femoral neck fracture",
             "Urinary tract infection"]
DISPOSITIONS = ["Home", "Home With Service", "Extended Care"]


def wrap(text, width=66):
    """Fixed-width wrap; wrapped lines keep their trailing space."""
    lines = textwrap.wrap(text, width=width, break_long_words=False)
    return "\n".join([line + " " for line in lines[:-1]] + lines[-1:])


def pick(rng, pool, k):
    return rng.sample(pool, k)


def make_note(rng):
    cc = rng.choice(COMPLAINTS)
    sex = rng.choice(["M", "F"])
    hpi = " ".join(s.format(cc=cc.lower()) for s in pick(rng, HPI_SENTENCES, 4))
    pmh = "\n".join("- " + p for p in pick(rng, PMH, rng.randint(2, 4)))
    labs = "\n".join(
        "___ {h:02d}:{m:02d}{ap} ".format(h=rng.randint(1, 12), m=rng.choice([0, 15, 30, 45]),
                                          ap=rng.choice(["AM", "PM"]))
        + lab.format(a=rng.randint(1, 9), b=rng.randint(1, 9))
        for lab in pick(rng, LABS, 3))
    adm_meds = pick(rng, MEDS, rng.randint(1, 3))
    dc_meds = pick(rng, MEDS, rng.randint(2, 4))
    bhc_paragraphs = [" ".join(pick(rng, HOSPITAL_COURSE, 3)), " ".join(pick(rng, HOSPITAL_COURSE, 2))]
    di_paragraphs = ["Dear ___,", " ".join(s.format(cc_lower=cc.lower()) for s in pick(rng, INSTRUCTIONS, 4)),
                     "Sincerely,\nYour ___ Team"]
    bhc = "\n \n".join(wrap(p) for p in bhc_paragraphs)
    di = "\n \n".join(wrap(p) if "\n" not in p else p for p in di_paragraphs)

    text = (
        " \nName:  ___                     Unit No:   ___\n \n"
        "Admission Date:  ___              Discharge Date:   ___\n \n"
        f"Date of Birth:  ___             Sex:   {sex}\n \n"
        f"Service: {rng.choice(SERVICES)}\n \n"
        f"Allergies: \n{rng.choice(ALLERGIES)}\n \n"
        "Attending: ___.\n \n"
        f"Chief Complaint:\n{cc}\n \n"
        f"Major Surgical or Invasive Procedure:\n{rng.choice(PROCEDURES)}\n\n \n"
        f"History of Present Illness:\n{wrap(hpi)}\n \n"
        f"Past Medical History:\n{pmh}\n \n"
        "Social History:\n___\nFamily History:\nNoncontributory.\n \n"
        "Physical Exam:\nVS: T 98.6 HR 78 BP 128/76 RR 16 O2 98% RA \nGen: NAD \n \n"
        f"Pertinent Results:\n{labs}\n \n"
        f"Brief Hospital Course:\n{bhc}\n \n"
        "Medications on Admission:\nThe Preadmission Medication list is accurate and complete.\n"
        + "\n".join(f"{i + 1}. {m} " for i, m in enumerate(adm_meds)) + "\n \n"
        "Discharge Medications:\n"
        + "\n".join(f"{i + 1}. {m} " for i, m in enumerate(dc_meds)) + "\n \n"
        f"Discharge Disposition:\n{rng.choice(DISPOSITIONS)}\n \n"
        f"Discharge Diagnosis:\n{rng.choice(DIAGNOSES)}\n \n"
        "Discharge Condition:\nMental Status: Clear and coherent.\n"
        "Level of Consciousness: Alert and interactive.\n"
        "Activity Status: Ambulatory - Independent.\n \n"
        f"Discharge Instructions:\n{di}\n \n"
        "Followup Instructions:\n___\n"
    )
    return text, bhc, di


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir", type=pathlib.Path)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=20240612)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for i in range(args.count):
        hadm_id = str(20000001 + i * 7)
        note_id = f"{10000001 + i}-DS-{1 + i % 3}"
        if i == args.count - 1:
            # Free text without a single recognized header.
            text = ("Patient seen and examined. Doing well today, tolerating diet.\n"
                    "Plan to continue current management and follow up as outpatient.\n")
            bhc = di = ""
        else:
            text, bhc, di = make_note(rng)
        rows.append({"hadm_id": hadm_id, "note_id": note_id, "text": text,
                     "brief_hospital_course": bhc, "discharge_instructions": di})

    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(args.out_dir / "notes.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["note_id", "hadm_id", "text"])
        for r in rows:
            w.writerow([r["note_id"], r["hadm_id"], r["text"]])
    with open(args.out_dir / "notes.jsonl", "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps({"hadm_id": r["hadm_id"], "note_id": r["note_id"],
                                "text": r["text"]}) + "\n")
    with open(args.out_dir / "targets.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["hadm_id", "discharge_instructions", "brief_hospital_course"])
        for r in rows:
            w.writerow([r["hadm_id"], r["discharge_instructions"], r["brief_hospital_course"]])


if __name__ == "__main__":
    main()
