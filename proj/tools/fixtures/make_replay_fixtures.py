#!/usr/bin/env python3
"""Authors the replay fixtures in data/fixtures/replay.

The responses are synthetic stand-ins for recorded model output: one APTC per
catalog weakness per cell, with deliberate defects (fences, prose, invented
names, schema slips) so that replayed runs exercise every validation path.
Each response is registered under the request key of the prompt the pipeline
builds, via `aptc generate --response-file --record`.

usage: make_replay_fixtures.py <aptc-binary> [repo-root]
"""
import copy
import json
import pathlib
import subprocess
import sys
import tempfile

MODELS = ["GPT-5.2", "Gemini-3-Pro"]
STRATEGIES = ["zero-shot", "one-shot", "few-shot"]
CASES = {
    "Maintenance": "maintenance.json",
    "PowerGrid": "powergrid.json",
    "Bank": "bank.json",
}


def aptc(cawe, props, threat, name, entry, asset, connector=None):
    vector = {"Name": name}
    if connector:
        vector["Connector"] = connector
    vector["EntryPoint"] = entry
    vector["Asset"] = asset
    return {"CAWE": cawe, "violatedSecurityProperty": props, "Threat": threat, "AttackVector": vector}


BASE = {
    "Maintenance": [
        aptc("CAWE-284", ["Confidentiality", "Integrity"],
             "Technician at the Terminal reads machine logs from ProductionDataStorage without any access-control check on LogAccess.",
             "Direct log retrieval from the terminal", "Terminal", "ProductionDataStorage", "TerminalProductionData"),
        aptc("CAWE-285", ["Integrity", "Availability"],
             "A Terminal session authorized for routine maintenance invokes stopMachine on the Machine without a per-operation check.",
             "Unchecked machine stop", "Terminal", "Machine", "MachineTerminal"),
        aptc("CAWE-862", "Confidentiality",
             "ProductStorage answers readProductionPlan for any caller on MachineProductStorage without an authorization check.",
             "Unchecked production plan read", "Machine", "ProductStorage", "MachineProductStorage"),
        aptc("CAWE-863", "Confidentiality",
             "Log access is granted on the technician role alone, ignoring whether the Machine is in a failure state.",
             "Role-only log authorization", "Terminal", "ProductionDataStorage", "TerminalProductionData"),
        aptc("CAWE-272", ["Confidentiality", "Integrity"],
             "The Machine holds full write privileges on ProductionDataStorage, so a compromised Machine can rewrite stored logs.",
             "Over-privileged machine log writer", "Machine", "ProductionDataStorage", "MachineProductionData"),
    ],
    "PowerGrid": [
        aptc("CAWE-284", ["Integrity", "Availability"],
             "Call-center users open tunnels on the VpnGateway without restrictions on which remote users may reach the ICS network.",
             "Unrestricted tunnel establishment", "CallCenterApplication", "VpnGateway", "CallCenterVpn"),
        aptc("CAWE-285", ["Integrity", "Availability"],
             "DmsServer forwards switching commands over DmsBreaker without verifying the operator is authorized for that breaker.",
             "Unverified breaker switching", "DmsServer", "BreakerController", "DmsBreaker"),
        aptc("CAWE-862", "Integrity",
             "DmsServer performs no authorization for scheduleSwitching requests arriving from the DmsClient.",
             "Unauthenticated switching schedule", "DmsClient", "DmsServer", "DmsClientServer"),
        aptc("CAWE-863", "Confidentiality",
             "VpnGateway authorizes tunnel users by corporate group membership, opening ICS access to every domain user.",
             "Group-based tunnel authorization", "VpnGateway", "DmsServer", "VpnDms"),
        aptc("CAWE-272", ["Confidentiality", "Integrity"],
             "VpnGateway binds to the DomainController with a service account that can also modify group memberships.",
             "Privileged directory bind", "VpnGateway", "DomainController", "VpnDirectory"),
    ],
    "Bank": [
        aptc("CAWE-284", "Confidentiality",
             "Portal users invoke account operations on CustomerAccountService without attribute checks on customer type.",
             "Portal path to customer accounts", "OnlineBankingPortal", "CustomerAccountService", "PortalAccounts"),
        aptc("CAWE-285", "Confidentiality",
             "CustomerAccountService returns celebrity customer records without consulting the attribute policy.",
             "Policy bypass on record reads", "CustomerAccountService", "CustomerDataStore", "AccountRecords"),
        aptc("CAWE-862", ["Confidentiality", "Integrity"],
             "BranchServiceAsia calls viewAccount for US customers and CustomerAccountService never requests an access decision.",
             "Cross-region account access", "BranchServiceAsia", "CustomerAccountService", "AsiaBranchAccounts"),
        aptc("CAWE-863", "Confidentiality",
             "AttributeAccessPolicy evaluates the staff role but ignores location, so Asia staff see US operations.",
             "Location-blind access decision", "CustomerAccountService", "AttributeAccessPolicy", "AccountPolicyCheck"),
        aptc("CAWE-272", "Integrity",
             "CustomerAccountService holds write access to all customer records although most requests only read them.",
             "Over-privileged record access", "CustomerAccountService", "CustomerDataStore", "AccountRecords"),
    ],
}


def set_vector(doc, **fields):
    for k, v in fields.items():
        if v is None:
            doc["AttackVector"].pop(k, None)
        else:
            doc["AttackVector"][k] = v


# (model, strategy, case) -> list of (index, mutation)
def mutate(model, strategy, case, docs):
    m = (model, strategy, case)
    if m == ("GPT-5.2", "zero-shot", "Maintenance"):
        set_vector(docs[3], EntryPoint="TerminalComponent", Asset="ProductionStorageComponent",
                   Connector="MachineTerminal")
        set_vector(docs[1], EntryPoint="TechnicianTerminal")
    if m == ("GPT-5.2", "zero-shot", "PowerGrid"):
        set_vector(docs[4], Connector="CorporateNetwork")
    if m == ("Gemini-3-Pro", "zero-shot", "PowerGrid"):
        docs[2]["CAWE"] = "CWE-79"
        set_vector(docs[0], Asset="ScadaServer")
        set_vector(docs[3], EntryPoint="EngineeringWorkstation")
    if m == ("Gemini-3-Pro", "zero-shot", "Maintenance"):
        docs[4]["applicability"] = "uncertain"
        docs[4]["missingInformation"] = "The model does not state which privileges the Machine holds on the storage."
    if m == ("GPT-5.2", "one-shot", "Bank"):
        del docs[2]["Threat"]
    if m == ("GPT-5.2", "one-shot", "PowerGrid"):
        set_vector(docs[1], Connector="VpnDms")
    if m == ("Gemini-3-Pro", "one-shot", "Bank"):
        docs[0]["violatedSecurityProperty"] = ["Confidentiality", "Authenticity"]
    if m == ("GPT-5.2", "few-shot", "Bank"):
        set_vector(docs[3], Asset="PolicyDecisionPoint")
        set_vector(docs[1], Connector=None)
    if m == ("Gemini-3-Pro", "few-shot", "Maintenance"):
        set_vector(docs[0], EntryPoint="ProductionDatabase")
        set_vector(docs[2], Asset="ProductRepository")
        set_vector(docs[3], Connector="TerminalStorage")
    if m == ("Gemini-3-Pro", "few-shot", "PowerGrid"):
        set_vector(docs[1], EntryPoint="ScadaServer")
        docs[3]["AttackVector"]["Steps"] = ["VpnGateway", "DmsServer"]
        set_vector(docs[0], Asset="HistorianDatabase")
    if m == ("Gemini-3-Pro", "few-shot", "Bank"):
        set_vector(docs[2], EntryPoint="BranchServiceEurope")
        set_vector(docs[4], Connector="DataCenterNetwork")
        docs[0]["violatedSecurityProperty"] = "Privacy"
    return docs


def render(model, strategy, case, docs):
    body = json.dumps(docs, indent=2)
    style = (MODELS.index(model) + STRATEGIES.index(strategy) + list(CASES).index(case)) % 3
    if style == 0:
        return body + "\n"
    if style == 1:
        return "```json\n" + body + "\n```\n"
    return ("Here are the APTCs for the " + case + " architecture, one per weakness.\n\n"
            + body + "\n\nEach test case uses only identifiers from the architecture.\n")


def main():
    binary = pathlib.Path(sys.argv[1]).resolve()
    root = pathlib.Path(sys.argv[2] if len(sys.argv) > 2 else ".").resolve()
    store = root / "data" / "fixtures" / "replay"
    store.mkdir(parents=True, exist_ok=True)
    for old in store.glob("*.json"):
        old.unlink()
    with tempfile.TemporaryDirectory() as tmp:
        for model in MODELS:
            for strategy in STRATEGIES:
                for case, arch in CASES.items():
                    docs = mutate(model, strategy, case, copy.deepcopy(BASE[case]))
                    response = pathlib.Path(tmp) / "response.txt"
                    response.write_text(render(model, strategy, case, docs))
                    subprocess.run(
                        [str(binary), "generate", "--arch", str(root / "data" / "case_studies" / arch),
                         "--strategy", strategy, "--model", model, "--response-file", str(response),
                         "--record", str(store), "--out", str(pathlib.Path(tmp) / "aptcs.json")],
                        check=True)
    print(f"{len(list(store.glob('*.json')))} fixtures in {store}")


if __name__ == "__main__":
    main()
