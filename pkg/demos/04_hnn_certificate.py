"""Word hyperbolicity and linearity of <a, b, t | tat^-1 = ab, tbt^-1 = ba>."""

# %%
from artifact.endo import analyze, is_immersion, periodic_conjugacy_search, sap_certificate
from artifact.freegroup import Endomorphism

theta = Endomorphism.from_strings(["ab", "ba"])

# %% the structural checks
print("immersion:", is_immersion(theta))
print(analyze(theta, 6, 3).to_json())

# %% no periodic conjugacy class up to length 8
print(periodic_conjugacy_search(theta, 8, 3))

# %% the certificate and its chain of steps
cert = sap_certificate(theta)
print(cert.verdict)
for k, s in enumerate(cert.steps, 1):
    print(f"{k:2}. [{s['status']}] {s['claim']}")

# %% controls
print(sap_certificate(Endomorphism.from_strings(["aa", "bb"])).witness)
print(sap_certificate(Endomorphism.from_strings(["ab", "b"])).reasons)
