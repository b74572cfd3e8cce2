#!/usr/bin/env python3
"""Writes data/mock/<id>.json (scripted model replies) and
data/students/<id>.json (scripted student answers) for the sample problems.

Each state variable gets a short arc: the student misses the first question,
gets a sibling question and answers it correctly. Run from the repo root.
"""
import json
import pathlib

INITIAL = "what is one question (k=1)"
SIBLING = "same level of depth"
VERIFY = "answer_addresses_question"

FIB_STATEMENT_TASKS = [
    "Understand the definition of the Fibonacci Sequence.",
    "Recognize that the recursive call only returns the sequence till the (n-2)th term.",
    "Modify the recursive call from fibonacci(n-2) to fibonacci(n-1).",
]

# Per problem: the plan, one arc per task, the bug-fix reply after each
# resolved task, and the verifier's resolution verdicts in order.
PROBLEMS = {
    "fibonacci-1bug": {
        "tasks": FIB_STATEMENT_TASKS,
        "arcs": [
            ("What is the Fibonacci sequence?",
             "It is when you multiply all the numbers up to n.",
             "The student described factorials instead of the Fibonacci sequence.",
             "Which two numbers does the Fibonacci sequence start with, and how is each next term formed?",
             "It starts with 0 and 1, and every next term is the sum of the previous two."),
            ("What does the recursive call fibonacci(n-2) return when n is 5?",
             "It returns the first five terms.",
             "The student assumes the call returns n terms.",
             "How many terms are in the list that fibonacci(3) returns?",
             "Three terms, so calling it with n-2 gives two terms fewer than we need, not one."),
            ("After the recursive call, how many terms does the code append before returning?",
             "It appends all the missing terms.",
             "The student thinks a loop appends several terms.",
             "How many times does the append line run in a single call?",
             "Exactly once, so the list we start from must already hold n-1 terms."),
        ],
        "fix_replies": ["None", "bug_fix_1: The recursive call should ask for one term fewer than n, not two."],
        "resolutions": ["correct_bug_fix_1: True - Asking for n-1 terms is the same change as the ground truth."],
    },
    "fibonacci-2bug": {
        "tasks": [
            "Understand the definition of the Fibonacci Sequence, starting from 0 and 1.",
            "Recognize that the base case for n == 1 returns the wrong first term.",
            "Recognize that the recursive call only returns the sequence till the (n-2)th term.",
        ],
        "arcs": [
            ("What are the first three terms of the Fibonacci sequence?",
             "1, 1, 2.",
             "The student starts the sequence at 1 instead of 0.",
             "What should fibonacci(1) return according to the problem statement?",
             "A list with just 0, because the sequence starts 0, 1, 1."),
            ("What does the code return for n equal to 1?",
             "It returns [0, 1].",
             "The student read the n == 2 branch.",
             "Which return statement runs when n is exactly 1?",
             "The one on line 5, which returns [1], but it should be the first term 0."),
            ("How many terms does fibonacci(n-2) give back when n is 4?",
             "Four terms.",
             "The student assumes the call returns n terms.",
             "If the list from the recursive call has n-2 terms and one term is appended, how many terms are returned?",
             "n-1 terms, one short, so the recursive call should only drop one term."),
        ],
        "fix_replies": [
            "bug_fix_1: Make the n == 1 case return a list with 0.",
            "bug_fix_1: Make the n == 1 case return a list with 0.",
            "bug_fix_1: Make the n == 1 case return a list with 0.\n"
            "bug_fix_2: Recurse on n minus one instead of n minus two.",
        ],
        "resolutions": [
            "correct_bug_fix_1: False - The recursive call is not addressed.\n"
            "correct_bug_fix_2: True - Returning 0 for n == 1 matches.",
            "correct_bug_fix_1: True - Recursing on n minus one matches.\n"
            "correct_bug_fix_2: True - Returning 0 for n == 1 matches.",
        ],
    },
    "fibonacci-3bug": {
        "tasks": [
            "Understand the correct syntax of an if/elif/else chain, including the colon after else.",
            "Understand the definition of the Fibonacci Sequence, starting from 0 and 1.",
            "Recognize that the base case for n == 1 returns the wrong first term.",
            "Recognize that the recursive call only returns the sequence till the (n-2)th term.",
        ],
        "arcs": [
            ("What error does Python report when you run this code?",
             "It says the list index is out of range.",
             "The student guessed a runtime error; the code does not parse.",
             "Look at line 8: what must every if, elif and else header end with?",
             "A colon, and the else on line 8 does not have one."),
            ("What are the first three terms of the Fibonacci sequence?",
             "1, 1, 2.",
             "The student starts the sequence at 1 instead of 0.",
             "What should fibonacci(1) return according to the problem statement?",
             "A list with only 0."),
            ("What does the code return for n equal to 1?",
             "It returns [0, 1].",
             "The student read the n == 2 branch.",
             "Which return statement runs when n is exactly 1?",
             "Line 5 runs, and it returns 1 instead of 0."),
            ("How many terms does fibonacci(n-2) give back when n is 4?",
             "Four terms.",
             "The student assumes the call returns n terms.",
             "If the recursive list has n-2 terms and one term is appended, how many are returned?",
             "Only n-1, so the call should drop one term, not two."),
        ],
        "fix_replies": [
            "bug_fix_1: Put a colon after else.",
            "bug_fix_1: Put a colon after else.",
            "bug_fix_1: Put a colon after else.\nbug_fix_2: Return a list with 0 when n is 1.",
            "bug_fix_1: Put a colon after else.\nbug_fix_2: Return a list with 0 when n is 1.\n"
            "bug_fix_3: Recurse on n minus one.",
        ],
        "resolutions": [
            "correct_bug_fix_1: False - not addressed\ncorrect_bug_fix_2: False - not addressed\n"
            "correct_bug_fix_3: True - same change",
            "correct_bug_fix_1: False - not addressed\ncorrect_bug_fix_2: True - same change\n"
            "correct_bug_fix_3: True - same change",
            "correct_bug_fix_1: True - same change\ncorrect_bug_fix_2: True - same change\n"
            "correct_bug_fix_3: True - same change",
        ],
    },
    "two-sum-1bug": {
        "tasks": [
            "Understand the problem statement and the requirement to find two numbers that add up to a specific target.",
            "Understand the logic behind calculating the difference as target - nums[i].",
            "Correctly implement the difference calculation in the code.",
        ],
        "arcs": [
            ("In your own words, what should twoSum return for nums = [2, 7, 11, 15] and target = 9?",
             "It should return 9.",
             "The student returned the target instead of indices.",
             "Which two positions in [2, 7, 11, 15] hold numbers that add up to 9?",
             "Positions 0 and 1, because 2 + 7 = 9."),
            ("When i is 0 and nums[0] is 2, which number would you need to find to reach 9?",
             "I would need 11.",
             "The student added instead of finding the complement.",
             "If one number is 2 and the sum must be 9, how do you compute the other number?",
             "Subtract 2 from 9, which gives 7."),
            ("What value does the variable difference hold on line 4 when i is 0 in that example?",
             "It holds 7.",
             "The student computed the intended value, not what the code computes.",
             "Compute nums[0] minus target for nums[0] = 2 and target = 9. What do you get?",
             "-7, so the subtraction is the wrong way round and should be the target minus the number."),
        ],
        "fix_replies": ["None", "None", "bug_fix_1: Swap the subtraction so it computes target minus nums[i]."],
        "resolutions": ["correct_bug_fix_1: True - Swapping the operands is the same fix."],
    },
    "two-sum-2bug": {
        "tasks": [
            "Understand how to correctly calculate the difference between the target and the current number in the array.",
            "Understand the difference between lists and dictionaries in Python.",
            "Correctly initialize a dictionary in Python.",
            "Understand how to use a dictionary to store and retrieve values in Python.",
        ],
        "arcs": [
            ("For nums = [2, 7] and target = 9, what is the difference on line 4 when i is 0?",
             "7.",
             "The student gave the intended value, not the computed one.",
             "What is 2 minus 9?",
             "-7, so the order of the subtraction is backwards."),
            ("What kind of object does line 2 create?",
             "A dictionary.",
             "The student thinks [] makes a dictionary.",
             "What does type([]) print in Python?",
             "It prints list, so d is a list, not a dictionary."),
            ("How do you write an empty dictionary in Python?",
             "With square brackets.",
             "The student confuses list and dictionary literals.",
             "Which brackets does Python use for a literal like {'a': 1}?",
             "Curly braces, so an empty one is just a pair of curly braces."),
            ("What does the line d[nums[i]] = i store?",
             "It appends i to the list.",
             "The student describes list behaviour.",
             "With a dictionary d, what are the key and the value in d[nums[i]] = i?",
             "The key is the number and the value is its index, so we can look up a complement's index later."),
        ],
        "fix_replies": [
            "bug_fix_1: Compute target minus nums[i].",
            "bug_fix_1: Compute target minus nums[i].",
            "bug_fix_1: Compute target minus nums[i].\nbug_fix_2: Start d as an empty dictionary.",
        ],
        "resolutions": [
            "correct_bug_fix_1: True - same change\ncorrect_bug_fix_2: False - not addressed",
            "correct_bug_fix_1: True - same change\ncorrect_bug_fix_2: True - same change",
        ],
    },
    "two-sum-3bug": {
        "tasks": [
            "Understand how to correctly calculate the difference as `target-nums[i]`.",
            "Understand how to initialize a dictionary using `{}` instead of `[]`.",
            "Understand how to use a dictionary to store and retrieve values.",
            "Understand the correct syntax for an if-condition, including the necessary colon at the end.",
        ],
        "arcs": [
            ("For nums = [2, 7] and target = 9, what is the difference on line 4 when i is 0?",
             "7.",
             "The student gave the intended value, not the computed one.",
             "What is 2 minus 9?",
             "-7, so the subtraction runs the wrong way."),
            ("What kind of object does line 2 create?",
             "A dictionary.",
             "The student thinks [] makes a dictionary.",
             "What does type([]) print in Python?",
             "list, so we need curly braces for a dictionary."),
            ("What does the line d[nums[i]] = i store?",
             "It appends i to the list.",
             "The student describes list behaviour.",
             "With a dictionary d, what are the key and the value in d[nums[i]] = i?",
             "The number is the key and its index is the value."),
            ("What does Python say when it reaches line 5?",
             "Nothing, it runs fine.",
             "The student missed the syntax error.",
             "What character must end the header line of an if statement?",
             "A colon, and line 5 is missing it."),
        ],
        "fix_replies": [
            "None",
            "bug_fix_1: Compute target minus nums[i].\nbug_fix_2: Start d as an empty dictionary.",
            "bug_fix_1: Compute target minus nums[i].\nbug_fix_2: Start d as an empty dictionary.",
            "bug_fix_1: Compute target minus nums[i].\nbug_fix_2: Start d as an empty dictionary.\n"
            "bug_fix_3: Add the missing colon to the if on line 5.",
        ],
        "resolutions": [
            "correct_bug_fix_1: True - same change\ncorrect_bug_fix_2: True - same change\n"
            "correct_bug_fix_3: False - not addressed",
            "correct_bug_fix_1: True - same change\ncorrect_bug_fix_2: True - same change\n"
            "correct_bug_fix_3: True - same change",
        ],
    },
}


def entry(kind, text, contains=""):
    e = {"task_kind": kind, "text": text}
    if contains:
        e["contains"] = contains
    return e


def build(spec):
    tasks, arcs = spec["tasks"], spec["arcs"]
    k = len(tasks)
    state = "".join(f"{i}. {t}\n" for i, t in enumerate(tasks, 1))
    mock = [entry("state_estimation", state)]
    responses = {}
    for i, (first_q, wrong, why, sibling_q, right) in enumerate(arcs):
        mock.append(entry("question_generation", first_q, INITIAL))
        mock.append(entry("question_generation", sibling_q, SIBLING))
        mock.append(entry("verification",
                          f"answer_addresses_question: True\nanswer_has_no_mistakes: False\nexplanation: {why}",
                          VERIFY))
        mock.append(entry("verification",
                          "answer_addresses_question: True\nanswer_has_no_mistakes: True\n"
                          "explanation: The answer is correct.", VERIFY))
        mock.append(entry("understanding_update", "understood: True\nexplanation: The student stated it."))
        for _ in range(k - i - 1):
            mock.append(entry("understanding_update", "understood: False\nexplanation: Not shown yet."))
        responses[str(2 * i + 1)] = wrong
        responses[str(2 * i + 2)] = right
    for r in spec["resolutions"]:
        mock.append(entry("resolution_check", r))
    student = {"responses": responses, "bug_fixes": spec["fix_replies"], "default": "I'm not sure."}
    return {"responses": mock}, student


def main():
    root = pathlib.Path("data")
    for pid, spec in PROBLEMS.items():
        mock, student = build(spec)
        for sub, body in (("mock", mock), ("students", student)):
            path = root / sub / f"{pid}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(body, indent=2, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
