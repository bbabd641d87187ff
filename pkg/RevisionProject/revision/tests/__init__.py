"""
Package de tests du laboratoire de révision multiple.

Structure des tests :
├── test_kernel.py      - Logiques, modèles, classes sémantiques (~2 sec)
├── test_orders.py      - Relations, minimaux, extension d'ordre (~5 sec)
├── test_change.py      - Opérateurs et tables (~5 sec)
├── test_audit.py       - Postulats, fidélité, compatibilité (~15 sec)
├── test_extract.py     - Extraction, relèvement, représentabilité (~15 sec)
├── test_loops.py       - Boucles critiques et chaîne de contre-exemple (~15 sec)
├── test_loaders.py     - Fichiers JSON et diagnostics (~2 sec)
├── test_cli.py         - Commandes de gestion et rapports (~40 sec)
├── test_properties.py  - Propriétés aléatoires ensemencées (~1 min)
└── test_oracle.py      - Recoupement par force brute indépendante (~20 sec)

Modules d'aide (non collectés) :
├── _helpers_fuzz.py    - Générateurs de logiques et d'affectations aléatoires
└── _helpers_oracle.py  - Oracle par force brute sur les bases brutes

Commandes utiles :

# Lancer TOUS les tests
python manage.py test revision.tests

# Tests rapides du noyau
python manage.py test revision.tests.test_kernel revision.tests.test_orders

# Tests par domaine
python manage.py test revision.tests.test_audit
python manage.py test revision.tests.test_loops

# Tests avec verbosité
python manage.py test revision.tests -v 2

# Tests en parallèle (plus rapide)
python manage.py test revision.tests --parallel

Ordre recommandé pour debugging :
1. test_kernel      - Sans noyau correct, rien ne tient
2. test_orders      - Minimaux et propriétés de relations
3. test_change      - Opérateurs
4. test_audit       - Vérificateurs
5. test_extract / test_loops - Constructions de haut niveau
6. test_cli         - Surface en ligne de commande
"""
