# Copyright 2026 The RefAgent Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the scripted playbooks from the bank fixture sources."""
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
B = os.path.join(HERE, '..', 'bank', 'src', 'main', 'java', 'bank') + '/'
acc=open(B+'Account.java').read()
led=open(B+'Ledger.java').read()
ts=open(B+'TransferService.java').read()

acc_fixed = acc.replace('''    public void deposit(long amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive");
        }
''','''    public void deposit(long amount) {
        requirePositive(amount);
''').replace('''    public boolean withdraw(long amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive");
        }
''','''    public boolean withdraw(long amount) {
        requirePositive(amount);
''').replace('''    public int getOperations() {
        return operations;
    }
}''','''    public int getOperations() {
        return operations;
    }

    private static void requirePositive(long amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive");
        }
    }
}''')
assert acc_fixed!=acc
acc_broken = acc_fixed.replace('balance = balance + amount;','balance = balance + amount',1)
assert acc_broken!=acc_fixed
led_fixed = led.replace('''        return entries.get(entries.size() - 1);''','''        int lastIndex = entries.size() - 1;
        return entries.get(lastIndex);''')
assert led_fixed!=led
ts_renamed = ts.replace('public boolean transfer(','public boolean move(')

def java(src, lead):
    return lead + "\n\n```java\n" + src + "```\n"
def plan(entries):
    return "Here is the plan.\n\n```json\n" + json.dumps(entries, indent=2) + "\n```\n"

acc_plan = plan([
 {"region_kind":"method","identifier":"deposit","line_range":[21,27],"refactoring_type":"Extract Method",
  "instruction":"Move the positive-amount check into a private static helper requirePositive(long) and call it."},
 {"region_kind":"method","identifier":"withdraw","line_range":[29,39],"refactoring_type":"Extract Method",
  "instruction":"Replace the duplicated positive-amount check with a call to requirePositive(long)."}])
led_plan = plan([
 {"region_kind":"method","identifier":"last","line_range":[17,22],"refactoring_type":"Extract Variable",
  "instruction":"Introduce a local lastIndex for entries.size() - 1."},
 {"region_kind":"method","identifier":"compact","line_range":None,"refactoring_type":"Inline Method",
  "instruction":"Inline compact into its callers."}])
ts_plan = plan([
 {"region_kind":"method","identifier":"transfer","line_range":[10,17],"refactoring_type":"Rename Method",
  "instruction":"Rename transfer to move, which reads better at call sites."}])

def e(agent, phase, cls, text, attempt=None, repeat=False, tool_calls=None):
    d={"agent":agent,"phase":phase,"class":cls}
    if attempt is not None: d["attempt"]=attempt
    d["text"]=text
    if tool_calls: d["tool_calls"]=tool_calls
    if repeat: d["repeat"]=True
    return d

e2e = {"entries":[
 e("planner","plan","bank.Account","Let me look at the metrics first.",attempt=1,
   tool_calls=[{"name":"code_metrics","arguments":json.dumps({"fqn":"bank.Account"})}]),
 e("planner","plan","bank.Account",acc_plan,attempt=1),
 e("generator","initial","bank.Account",java(acc_broken,"Refactored Account:")),
 e("generator","compile_fix","bank.Account",java(acc_fixed,"Added the missing semicolon:"),attempt=2),
 e("planner","plan","bank.Ledger",led_plan),
 e("generator","initial","bank.Ledger",java(led_fixed,"Refactored Ledger:")),
 e("planner","plan","bank.TransferService",ts_plan),
 e("generator","initial","bank.TransferService",java(ts_renamed,"Renamed the method:")),
 e("generator","test_fix","bank.TransferService",java(ts_renamed,"The rename is correct; keeping it:"),repeat=True),
]}
compile_broken = {"entries":[
 e("planner","plan","bank.Account",acc_plan),
 e("generator","initial","bank.Account",java(acc_broken,"Refactored Account:")),
 e("generator","compile_fix","bank.Account",java(acc_broken,"Fixed:"),repeat=True),
]}
tests_failing = {"entries":[
 e("planner","plan","bank.TransferService",ts_plan),
 e("generator","initial","bank.TransferService",java(ts_renamed,"Renamed the method:")),
 e("generator","test_fix","bank.TransferService",java(ts_renamed,"Keeping the rename:"),repeat=True),
]}
P = HERE + '/'
for name,obj in [("bank_e2e",e2e),("bank_compile_broken",compile_broken),("bank_tests_failing",tests_failing)]:
    open(P+name+".json","w").write(json.dumps(obj,indent=2)+"\n")

led_broken = led_fixed.replace('int lastIndex = entries.size() - 1;','int lastIndex = entries.size() - 1')
baseline = {"entries":[
 e("baseline","oneshot","bank.Account",java(acc_broken,"Refactored:"),attempt=1),
 e("baseline","oneshot","bank.Account",java(acc_fixed,"Refactored:"),attempt=2),
 e("baseline","oneshot","bank.Account","I would extract a helper for the amount check.",attempt=3),
 e("baseline","oneshot","bank.Ledger",java(led_broken,"Refactored:"),repeat=True),
 e("baseline","oneshot","bank.TransferService",java(ts_renamed,"Refactored:"),repeat=True),
]}
open(P+"bank_oneshot.json","w").write(json.dumps(baseline,indent=2)+"\n")
